/** Room interior: objects at their solver positions, with the dwell timer. */

import { groupBadge } from "./colors.js";
import type { RoomResponse } from "./types.js";

export const DWELL_MS = 2000;

export class RoomView {
  private dwellTimers = new Map<string, ReturnType<typeof setTimeout>>();

  constructor(
    private container: HTMLElement,
    private detail: HTMLElement,
    private callbacks: {
      onStandBefore: (objectId: string) => void;
      onConsult: (objectId: string) => void;
      onBasketAdd: (objectId: string) => void;
      inBasket: (objectId: string) => boolean;
    },
  ) {}

  render(response: RoomResponse): void {
    this.clearTimers();
    this.container.innerHTML = "";
    this.detail.innerHTML = "";
    const { room, objects } = response;

    const header = document.createElement("div");
    header.className = "room-header";
    header.textContent = `room ${response.room_id} - ${room.topic.join(" + ")}`;
    if (room.contents.empty_pool) header.textContent += " (nothing to show yet)";
    this.container.appendChild(header);

    const floor = document.createElement("div");
    floor.className = "room-floor";
    this.container.appendChild(floor);

    for (const placed of room.contents.placed) {
      const card = objects[placed.object_id];
      const tile = document.createElement("button");
      tile.className = `object-tile group-${placed.source_group}`;
      tile.style.left = `${placed.x * 100}%`;
      tile.style.top = `${(1 - placed.y) * 100}%`;
      tile.title = `${card.name} (${groupBadge(placed.source_group)})`;
      tile.textContent = card.name.slice(0, 2);

      // standing in front of an object = hovering it for two seconds
      tile.addEventListener("mouseenter", () => {
        const timer = setTimeout(() => {
          this.callbacks.onStandBefore(placed.object_id);
          this.dwellTimers.delete(placed.object_id);
        }, DWELL_MS);
        this.dwellTimers.set(placed.object_id, timer);
      });
      tile.addEventListener("mouseleave", () => {
        const timer = this.dwellTimers.get(placed.object_id);
        if (timer) {
          clearTimeout(timer);
          this.dwellTimers.delete(placed.object_id);
        }
      });
      tile.addEventListener("click", () => {
        this.callbacks.onConsult(placed.object_id);
        this.showDetail(placed.object_id, response);
      });
      floor.appendChild(tile);
    }
  }

  private showDetail(objectId: string, response: RoomResponse): void {
    const card = response.objects[objectId];
    this.detail.innerHTML = "";
    const title = document.createElement("h3");
    title.textContent = card.name;
    const text = document.createElement("p");
    text.textContent = card.description;
    const tags = document.createElement("p");
    tags.className = "entity-tags";
    tags.textContent = card.entities.join(" · ");
    this.detail.append(title, text, tags);
    if (!this.callbacks.inBasket(objectId)) {
      const add = document.createElement("button");
      add.textContent = "add to basket";
      add.addEventListener("click", () => this.callbacks.onBasketAdd(objectId));
      this.detail.appendChild(add);
    }
  }

  private clearTimers(): void {
    for (const timer of this.dwellTimers.values()) clearTimeout(timer);
    this.dwellTimers.clear();
  }
}
