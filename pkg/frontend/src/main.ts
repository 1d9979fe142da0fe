/** Bootstrap: attach or create a session, wire the panes, stay in sync. */

import { ExplorationApi, resolveBaseUrl } from "./api.js";
import { BasketView } from "./basket.js";
import { FloorplanView } from "./floorplan.js";
import { RoomView } from "./room.js";
import { applyGesture, applyServerEvent, clearDirty, initialViewState, ViewState } from "./state.js";
import { ToolsView } from "./tools.js";
import type { Gesture } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id}`);
  return element as T;
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(location.search);
  const api = new ExplorationApi(resolveBaseUrl(location));
  const wantedMode = params.get("clock") === "logical" ? "logical" : "realtime";

  let info;
  const existing = params.get("session");
  if (existing) {
    api.sessionId = existing;
    info = await api.info();
  } else {
    info = await api.createSession(wantedMode);
    params.set("session", api.sessionId);
    history.replaceState(null, "", `${location.pathname}?${params}`);
  }

  let state: ViewState = initialViewState(info.user_room);
  let basketIds: string[] = [];

  const send = (gesture: Gesture) => {
    state = applyGesture(state, gesture);
    api.post(gesture).then(refresh).catch((error) => showError(String(error)));
  };

  const floorplanSvg = document.querySelector<SVGSVGElement>("svg#floorplan");
  if (!floorplanSvg) throw new Error("missing #floorplan svg");
  const floorplan = new FloorplanView(floorplanSvg, {
    onEnterRoom: (roomId) => send({ type: "enter_room", room_id: roomId }),
    onApproachDoor: (roomId, doorIndex) =>
      send({ type: "door_approach", room_id: roomId, door_index: doorIndex }),
  });
  const room = new RoomView(byId("room"), byId("object-detail"), {
    onStandBefore: (objectId) => send({ type: "stand_before", object_id: objectId }),
    onConsult: (objectId) => send({ type: "consult_description", object_id: objectId }),
    onBasketAdd: (objectId) => send({ type: "basket_add", object_id: objectId }),
    inBasket: (objectId) => basketIds.includes(objectId),
  });
  const tools = new ToolsView(
    { topos: byId("tool-topos"), chronos: byId("tool-chronos"), thema: byId("tool-thema") },
    send,
  );
  const basket = new BasketView(byId("basket"), (objectId) =>
    send({ type: "basket_remove", object_id: objectId }),
  );

  const statusLine = byId("status");
  const showError = (message: string) => {
    statusLine.textContent = message;
    statusLine.classList.add("error");
    setTimeout(() => statusLine.classList.remove("error"), 2500);
  };

  let refreshing = false;
  async function refresh(): Promise<void> {
    if (refreshing) return;
    refreshing = true;
    try {
      const dirty = state;
      state = clearDirty(state);
      const latest = await api.info();
      statusLine.textContent = `session ${api.sessionId} · clock ${latest.clock}s · ${latest.room_count} rooms`;
      if (dirty.museumDirty) {
        const snapshot = await api.museum();
        if (!snapshot.rooms[state.currentRoom]) state = { ...state, currentRoom: snapshot.root };
        floorplan.render(snapshot, state.currentRoom);
      }
      if (dirty.roomDirty) room.render(await api.room(state.currentRoom));
      if (dirty.overlaysDirty) {
        const [topos, chronos, thema] = await Promise.all([
          api.overlay("topos"),
          api.overlay("chronos"),
          api.overlay("thema"),
        ]);
        tools.render({ topos, chronos, thema });
      }
      if (dirty.basketDirty) {
        const response = await api.basket();
        basketIds = response.basket;
        basket.render(response);
      }
    } finally {
      refreshing = false;
    }
  }

  api.subscribe((event) => {
    state = applyServerEvent(state, event);
    void refresh();
  }, 0);

  const tickButton = byId<HTMLButtonElement>("tick-button");
  if (info.clock_mode === "logical") {
    tickButton.hidden = false;
    tickButton.addEventListener("click", async () => {
      await api.ticks(1);
      state = { ...state, museumDirty: true, roomDirty: true, overlaysDirty: true };
      void refresh();
    });
  }

  await refresh();
}

boot().catch((error) => {
  document.body.innerHTML = `<pre class="boot-error">failed to start: ${error}</pre>`;
});
