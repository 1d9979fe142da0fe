/** View-state bookkeeping: what the next render needs to refetch.
 *
 * The client holds no simulation state of its own; every pane is drawn
 * from server snapshots, and events only mark panes stale.  Reloading the
 * page with the same session id therefore reproduces the same view.
 */

import type { Gesture, ServerEvent } from "./types.js";

export interface ViewState {
  currentRoom: string;
  lastSeq: number;
  museumDirty: boolean;
  roomDirty: boolean;
  overlaysDirty: boolean;
  basketDirty: boolean;
}

export function initialViewState(currentRoom: string): ViewState {
  return {
    currentRoom,
    lastSeq: 0,
    museumDirty: true,
    roomDirty: true,
    overlaysDirty: true,
    basketDirty: true,
  };
}

export function applyServerEvent(state: ViewState, event: ServerEvent): ViewState {
  const next = { ...state, lastSeq: Math.max(state.lastSeq, event.seq) };
  switch (event.type) {
    case "room_spawned":
    case "door_opened":
      next.museumDirty = true;
      // the current room's doors may just have opened
      next.roomDirty = next.roomDirty || event.room_id === state.currentRoom;
      return next;
    case "relevance_updated":
      next.overlaysDirty = true;
      return next;
  }
}

export function applyGesture(state: ViewState, gesture: Gesture): ViewState {
  const next = { ...state };
  switch (gesture.type) {
    case "enter_room":
      next.currentRoom = gesture.room_id;
      next.roomDirty = true;
      next.museumDirty = true;
      return next;
    case "basket_add":
    case "basket_remove":
      next.basketDirty = true;
      return next;
    default:
      return next;
  }
}

export function clearDirty(state: ViewState): ViewState {
  return { ...state, museumDirty: false, roomDirty: false, overlaysDirty: false, basketDirty: false };
}
