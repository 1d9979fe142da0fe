/** Basket panel: the hand-picked collection, in add order, with removal. */

import type { BasketResponse } from "./types.js";

export class BasketView {
  constructor(
    private container: HTMLElement,
    private onRemove: (objectId: string) => void,
  ) {}

  render(response: BasketResponse): void {
    this.container.innerHTML = "";
    if (response.basket.length === 0) {
      const empty = document.createElement("p");
      empty.className = "basket-empty";
      empty.textContent = "basket is empty";
      this.container.appendChild(empty);
      return;
    }
    const list = document.createElement("ul");
    for (const objectId of response.basket) {
      const item = document.createElement("li");
      const name = document.createElement("span");
      name.textContent = response.objects[objectId]?.name ?? objectId;
      const remove = document.createElement("button");
      remove.textContent = "remove";
      remove.addEventListener("click", () => this.onRemove(objectId));
      item.append(name, remove);
      list.appendChild(item);
    }
    this.container.appendChild(list);
  }
}
