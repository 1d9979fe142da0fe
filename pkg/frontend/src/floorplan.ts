/** Portal-graph view of the museum: rooms as nodes, doors as edges/stubs. */

import type { MuseumSnapshot } from "./types.js";

export interface FloorplanNode {
  id: string;
  depth: number;
  x: number;
  y: number;
  topic: string[];
}

export interface FloorplanEdge {
  from: string;
  to: string;
}

export interface FloorplanStub {
  roomId: string;
  doorIndex: number;
}

export interface FloorplanLayout {
  nodes: FloorplanNode[];
  edges: FloorplanEdge[];
  stubs: FloorplanStub[];
}

/**
 * Tidy tree layout: leaves take consecutive horizontal slots, parents sit
 * centered above their children, depth maps to vertical rank.  Pure and
 * deterministic, so a fresh snapshot (for instance after a room_spawned
 * event) just recomputes the picture; no incremental state survives.
 */
export function layoutMuseum(snapshot: MuseumSnapshot): FloorplanLayout {
  const nodes: FloorplanNode[] = [];
  const edges: FloorplanEdge[] = [];
  const stubs: FloorplanStub[] = [];
  let nextSlot = 0;

  const place = (roomId: string, depth: number): number => {
    const room = snapshot.rooms[roomId];
    if (!room) throw new Error(`room ${roomId} missing from snapshot`);
    room.doors.forEach((child, doorIndex) => {
      if (child === null) stubs.push({ roomId, doorIndex });
    });
    const childXs = room.children.map((child) => {
      edges.push({ from: roomId, to: child });
      return place(child, depth + 1);
    });
    const x = childXs.length ? childXs.reduce((a, b) => a + b, 0) / childXs.length : nextSlot++;
    nodes.push({ id: roomId, depth, x, y: depth, topic: room.topic });
    return x;
  };

  place(snapshot.root, 0);
  return { nodes, edges, stubs };
}

const CELL_W = 96;
const CELL_H = 72;
const PAD = 40;

export class FloorplanView {
  constructor(
    private svg: SVGSVGElement,
    private callbacks: {
      onEnterRoom: (roomId: string) => void;
      onApproachDoor: (roomId: string, doorIndex: number) => void;
    },
  ) {}

  render(snapshot: MuseumSnapshot, currentRoom: string): void {
    const { nodes, edges, stubs } = layoutMuseum(snapshot);
    const byId = new Map(nodes.map((n) => [n.id, n]));
    const width = Math.max(...nodes.map((n) => n.x), 0) * CELL_W + 2 * PAD;
    const height = Math.max(...nodes.map((n) => n.y), 0) * CELL_H + 2 * PAD;
    this.svg.setAttribute("viewBox", `0 0 ${Math.max(width, 200)} ${Math.max(height, 120)}`);
    this.svg.innerHTML = "";

    const ns = "http://www.w3.org/2000/svg";
    const sx = (n: FloorplanNode) => n.x * CELL_W + PAD;
    const sy = (n: FloorplanNode) => n.y * CELL_H + PAD;

    for (const edge of edges) {
      const a = byId.get(edge.from)!;
      const b = byId.get(edge.to)!;
      const line = document.createElementNS(ns, "line");
      line.setAttribute("x1", String(sx(a)));
      line.setAttribute("y1", String(sy(a)));
      line.setAttribute("x2", String(sx(b)));
      line.setAttribute("y2", String(sy(b)));
      line.setAttribute("class", "portal-edge");
      this.svg.appendChild(line);
    }

    const stubAngles = [-150, -90, -30];
    for (const stub of stubs) {
      const node = byId.get(stub.roomId)!;
      const angle = (stubAngles[stub.doorIndex] * Math.PI) / 180;
      const x = sx(node) + Math.cos(angle) * 26;
      const y = sy(node) + Math.sin(angle) * 26;
      const dot = document.createElementNS(ns, "rect");
      dot.setAttribute("x", String(x - 5));
      dot.setAttribute("y", String(y - 5));
      dot.setAttribute("width", "10");
      dot.setAttribute("height", "10");
      dot.setAttribute("class", "door-stub");
      dot.addEventListener("click", () => this.callbacks.onApproachDoor(stub.roomId, stub.doorIndex));
      const title = document.createElementNS(ns, "title");
      title.textContent = `closed door ${stub.doorIndex} of room ${stub.roomId}`;
      dot.appendChild(title);
      this.svg.appendChild(dot);
    }

    for (const node of nodes) {
      const group = document.createElementNS(ns, "g");
      group.setAttribute("class", node.id === currentRoom ? "room-node current" : "room-node");
      const circle = document.createElementNS(ns, "circle");
      circle.setAttribute("cx", String(sx(node)));
      circle.setAttribute("cy", String(sy(node)));
      circle.setAttribute("r", "16");
      group.appendChild(circle);
      const label = document.createElementNS(ns, "text");
      label.setAttribute("x", String(sx(node)));
      label.setAttribute("y", String(sy(node) + 30));
      label.setAttribute("text-anchor", "middle");
      label.textContent = node.topic.join(" + ");
      group.appendChild(label);
      group.addEventListener("click", () => this.callbacks.onEnterRoom(node.id));
      this.svg.appendChild(group);
    }
  }
}
