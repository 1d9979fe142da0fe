/** Wire types of the exploration service API. */

export interface PlacedObject {
  object_id: string;
  x: number;
  y: number;
  source_group: 1 | 2 | 3;
}

export interface RoomContents {
  placed: PlacedObject[];
  empty_pool: boolean;
  layout_converged: boolean;
}

export interface RoomSnapshot {
  parent: string | null;
  children: string[];
  topic: string[];
  doors: (string | null)[];
  created_at: number;
  contents: RoomContents;
}

export interface MuseumSnapshot {
  root: string;
  rooms: Record<string, RoomSnapshot>;
}

export interface ObjectCard {
  name: string;
  description: string;
  image_ref: string | null;
  entities: string[];
}

export interface RoomResponse {
  room_id: string;
  room: RoomSnapshot;
  objects: Record<string, ObjectCard>;
}

export interface OverlayEntry {
  entity: string;
  label: string;
  payload: number | string;
  relevance: number;
  hue: number;
}

export interface BasketResponse {
  basket: string[];
  objects: Record<string, ObjectCard>;
}

export interface SessionInfo {
  session_id: string;
  clock: number;
  clock_mode: "realtime" | "logical";
  user_room: string;
  room_count: number;
  basket_size: number;
}

export type ServerEvent =
  | { seq: number; tick: number; type: "room_spawned"; room_id: string; parent_id: string; door_index: number; topic: string[] }
  | { seq: number; tick: number; type: "door_opened"; room_id: string; door_index: number; child_id: string }
  | { seq: number; tick: number; type: "relevance_updated"; top: { entity: string; relevance: number; hue: number }[] };

export type Gesture =
  | { type: "stand_before"; object_id: string }
  | { type: "consult_description"; object_id: string }
  | { type: "basket_add"; object_id: string }
  | { type: "basket_remove"; object_id: string }
  | { type: "enter_room"; room_id: string }
  | { type: "tool_use"; tool: "topos" | "thema"; target: string }
  | { type: "tool_use"; tool: "chronos"; target: [number, number] }
  | { type: "door_approach"; room_id: string; door_index: number };
