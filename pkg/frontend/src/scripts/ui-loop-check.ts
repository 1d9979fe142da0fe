/**
 * Scripted end-to-end check of the co-evolution loop against a running
 * logical-mode server, exercising the exact calls the UI makes:
 *
 *   1. create a session and read the Thema overlay (everything starts red);
 *   2. click a Thema word (tool_use), advance 5 ticks, and verify that the
 *      word's hue fraction strictly increased (turned greener);
 *   3. approach a closed door, advance 1 tick, and verify a new room node
 *      shows up in the next museum snapshot without any reload.
 *
 * Usage:
 *   explore serve --catalog src/museum_explorer/data/sample_catalog.json --logical &
 *   node dist/scripts/ui-loop-check.js [http://127.0.0.1:8000]
 */

const baseUrl = (process.argv[2] ?? "http://127.0.0.1:8000").replace(/\/$/, "");

interface Overlay {
  entities: { entity: string; hue: number; relevance: number }[];
}

async function call<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(`${baseUrl}${path}`, init);
  if (!response.ok) {
    throw new Error(`${init?.method ?? "GET"} ${path} -> ${response.status}: ${await response.text()}`);
  }
  return (await response.json()) as T;
}

function post<T>(path: string, body?: unknown): Promise<T> {
  return call<T>(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
}

let failures = 0;
function check(label: string, ok: boolean, detail = ""): void {
  console.log(`${ok ? "PASS" : "FAIL"}  ${label}${detail ? ` (${detail})` : ""}`);
  if (!ok) failures += 1;
}

async function main(): Promise<void> {
  const session = await post<{ session_id: string }>("/sessions", { clock_mode: "logical", seed: 1 });
  const sid = session.session_id;
  console.log(`session ${sid} against ${baseUrl}`);

  const before = await call<Overlay>(`/sessions/${sid}/relevance?dimension=thema`);
  check("fresh overlay is all red", before.entities.every((e) => e.hue === 0));

  const word = before.entities[before.entities.length - 1].entity;
  await post(`/sessions/${sid}/interactions`, { type: "tool_use", tool: "thema", target: word });
  await post(`/sessions/${sid}/ticks?n=5`);
  const after = await call<Overlay>(`/sessions/${sid}/relevance?dimension=thema`);
  const hueBefore = before.entities.find((e) => e.entity === word)!.hue;
  const hueAfter = after.entities.find((e) => e.entity === word)!.hue;
  check(
    `clicked word turns greener after 5 ticks`,
    hueAfter > hueBefore,
    `${word}: ${hueBefore.toFixed(3)} -> ${hueAfter.toFixed(3)}`,
  );

  const museumBefore = await call<{ root: string; rooms: Record<string, { doors: (string | null)[] }> }>(
    `/sessions/${sid}/museum`,
  );
  const roomIds = Object.keys(museumBefore.rooms);
  const userRoom = museumBefore.root;
  const closedDoor = museumBefore.rooms[userRoom].doors.findIndex((d) => d === null);
  check("root still has a closed door to approach", closedDoor >= 0);

  await post(`/sessions/${sid}/interactions`, {
    type: "door_approach",
    room_id: userRoom,
    door_index: closedDoor,
  });
  await post(`/sessions/${sid}/ticks?n=1`);
  const museumAfter = await call<{ rooms: Record<string, unknown> }>(`/sessions/${sid}/museum`);
  const newRooms = Object.keys(museumAfter.rooms).filter((id) => !roomIds.includes(id));
  check("approaching a closed door produced a new room node", newRooms.length === 1, `new: ${newRooms}`);

  if (failures > 0) {
    console.error(`${failures} check(s) failed`);
    process.exit(1);
  }
  console.log("ui loop verified");
}

main().catch((error) => {
  console.error(error);
  process.exit(1);
});
