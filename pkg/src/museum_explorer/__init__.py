"""Adaptive data exploration through a growing virtual museum.

The library estimates a user's centers of interest in real time from an
interaction trace (decay, reinforcement, graph diffusion) and grows a
tree of themed rooms around them, selecting and arranging objects so that
close matches and serendipitous neighbors share the floor.
"""

from .composer import (
    PartitionedCandidates,
    PlacedObject,
    RoomContents,
    compose_room,
    layout_objects,
    partition_objects,
    select_objects,
    topic_distance,
)
from .dataspace import (
    Catalog,
    CatalogError,
    Dimension,
    DimensionalEntity,
    HeritageObject,
    load_catalog,
    sample_catalog_path,
)
from .museum import (
    DoorApproach,
    Museum,
    MuseumError,
    RelevancePeak,
    Room,
    TopicExhausted,
    adjoining_rooms,
    detect_triggers,
    init_museum,
    select_topic,
    spawn_room,
    validate_museum,
)
from .params import Params, ParamsError, load_params
from .relevance import (
    Interaction,
    InteractionType,
    RelevanceState,
    Trace,
    TraceError,
    interaction_weight,
    propagate,
    record_interaction,
    relevance_to_color,
    tick,
    top_relevant,
)
from .session import (
    ClockMode,
    ClockModeError,
    EventError,
    PersistenceError,
    Session,
    advance_clock,
    create_session,
    get_basket,
    get_museum,
    get_relevance_overlay,
    get_room,
    load_session,
    post_interaction,
    save_session,
    tick_session,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CatalogError",
    "ClockMode",
    "ClockModeError",
    "Dimension",
    "DimensionalEntity",
    "DoorApproach",
    "EventError",
    "HeritageObject",
    "Interaction",
    "InteractionType",
    "Museum",
    "MuseumError",
    "Params",
    "ParamsError",
    "PartitionedCandidates",
    "PersistenceError",
    "PlacedObject",
    "RelevancePeak",
    "RelevanceState",
    "Room",
    "RoomContents",
    "Session",
    "TopicExhausted",
    "Trace",
    "TraceError",
    "adjoining_rooms",
    "advance_clock",
    "compose_room",
    "create_session",
    "detect_triggers",
    "get_basket",
    "get_museum",
    "get_relevance_overlay",
    "get_room",
    "init_museum",
    "interaction_weight",
    "layout_objects",
    "load_catalog",
    "load_params",
    "load_session",
    "partition_objects",
    "post_interaction",
    "propagate",
    "record_interaction",
    "relevance_to_color",
    "sample_catalog_path",
    "save_session",
    "select_objects",
    "select_topic",
    "spawn_room",
    "tick",
    "tick_session",
    "top_relevant",
    "validate_museum",
]
