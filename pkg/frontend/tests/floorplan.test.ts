import { describe, expect, it } from "vitest";

import { layoutMuseum } from "../src/floorplan.js";
import type { MuseumSnapshot, RoomSnapshot } from "../src/types.js";

function room(partial: Partial<RoomSnapshot>): RoomSnapshot {
  return {
    parent: null,
    children: [],
    topic: ["x"],
    doors: [null, null, null],
    created_at: 0,
    contents: { placed: [], empty_pool: false, layout_converged: true },
    ...partial,
  };
}

function snapshotOf(rooms: Record<string, RoomSnapshot>, root = "0"): MuseumSnapshot {
  return { root, rooms };
}

function chainSnapshot(count: number): MuseumSnapshot {
  // rooms 0 -> 1 -> 2 ... each child behind door 0
  const rooms: Record<string, RoomSnapshot> = {};
  for (let i = 0; i < count; i++) {
    const childId = i + 1 < count ? String(i + 1) : null;
    rooms[String(i)] = room({
      parent: i === 0 ? null : String(i - 1),
      children: childId ? [childId] : [],
      doors: [childId, null, null],
    });
  }
  return snapshotOf(rooms);
}

describe("layoutMuseum", () => {
  it("renders a one-room museum as a single node with three stubs", () => {
    const layout = layoutMuseum(snapshotOf({ "0": room({}) }));
    expect(layout.nodes).toHaveLength(1);
    expect(layout.edges).toHaveLength(0);
    expect(layout.stubs).toHaveLength(3);
  });

  it("a tree of seven rooms has six edges", () => {
    const rooms: Record<string, RoomSnapshot> = {
      "0": room({ children: ["1", "2", "3"], doors: ["1", "2", "3"] }),
      "1": room({ parent: "0", children: ["4", "5"], doors: ["4", "5", null] }),
      "2": room({ parent: "0" }),
      "3": room({ parent: "0", children: ["6"], doors: [null, "6", null] }),
      "4": room({ parent: "1" }),
      "5": room({ parent: "1" }),
      "6": room({ parent: "3" }),
    };
    const layout = layoutMuseum(snapshotOf(rooms));
    expect(layout.nodes).toHaveLength(7);
    expect(layout.edges).toHaveLength(6);
    // 7 rooms x 3 doors - 6 open = 15 stubs
    expect(layout.stubs).toHaveLength(15);
  });

  it("depth maps to rank and parents sit over their children", () => {
    const layout = layoutMuseum(chainSnapshot(4));
    const byId = new Map(layout.nodes.map((n) => [n.id, n]));
    expect(byId.get("0")!.y).toBe(0);
    expect(byId.get("3")!.y).toBe(3);
    const parent = byId.get("0")!;
    const child = byId.get("1")!;
    expect(parent.x).toBeCloseTo(child.x);
  });

  it("a new snapshot with a spawned room recomputes without hidden state", () => {
    const before = layoutMuseum(snapshotOf({ "0": room({}) }));
    const after = layoutMuseum(
      snapshotOf({
        "0": room({ children: ["1"], doors: [null, "1", null] }),
        "1": room({ parent: "0" }),
      }),
    );
    expect(before.nodes).toHaveLength(1);
    expect(after.nodes).toHaveLength(2);
    expect(after.edges).toEqual([{ from: "0", to: "1" }]);
    expect(after.stubs.filter((s) => s.roomId === "0")).toHaveLength(2);
  });

  it("siblings get distinct horizontal slots", () => {
    const rooms: Record<string, RoomSnapshot> = {
      "0": room({ children: ["1", "2", "3"], doors: ["1", "2", "3"] }),
      "1": room({ parent: "0" }),
      "2": room({ parent: "0" }),
      "3": room({ parent: "0" }),
    };
    const layout = layoutMuseum(snapshotOf(rooms));
    const xs = layout.nodes.filter((n) => n.y === 1).map((n) => n.x);
    expect(new Set(xs).size).toBe(3);
  });
});
