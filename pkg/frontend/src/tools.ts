/** The three focus tools: territory grid, century timeline, concept list.
 *
 * Every element is tinted by the relevance overlay (green = hot, red =
 * cold).  Clicks post tool_use gestures; the Chronos timeline supports
 * selecting a period by clicking its two endpoints.
 */

import { hueToCss } from "./colors.js";
import type { Gesture, OverlayEntry } from "./types.js";

export function sortOverlay(entries: OverlayEntry[], dimension: "chronos" | "topos" | "thema"): OverlayEntry[] {
  const copy = [...entries];
  if (dimension === "chronos") {
    copy.sort((a, b) => (a.payload as number) - (b.payload as number));
  } else if (dimension === "topos") {
    copy.sort((a, b) => a.entity.localeCompare(b.entity));
  }
  // thema keeps the server's relevance ranking: a word list, hottest first
  return copy;
}

export function chronosInterval(first: number, second: number): Gesture {
  const [lo, hi] = first <= second ? [first, second] : [second, first];
  return { type: "tool_use", tool: "chronos", target: [lo, hi] };
}

export class ToolsView {
  private pendingCentury: number | null = null;

  constructor(
    private panels: { topos: HTMLElement; chronos: HTMLElement; thema: HTMLElement },
    private onGesture: (gesture: Gesture) => void,
  ) {}

  render(overlays: { topos: OverlayEntry[]; chronos: OverlayEntry[]; thema: OverlayEntry[] }): void {
    this.renderTopos(sortOverlay(overlays.topos, "topos"));
    this.renderChronos(sortOverlay(overlays.chronos, "chronos"));
    this.renderThema(sortOverlay(overlays.thema, "thema"));
  }

  private renderTopos(entries: OverlayEntry[]): void {
    const panel = this.panels.topos;
    panel.innerHTML = "";
    for (const entry of entries) {
      const tile = document.createElement("button");
      tile.className = "territory-tile";
      tile.style.background = hueToCss(entry.hue);
      tile.textContent = entry.label;
      tile.title = `R = ${entry.relevance.toFixed(3)}`;
      tile.addEventListener("click", () =>
        this.onGesture({ type: "tool_use", tool: "topos", target: entry.entity }),
      );
      panel.appendChild(tile);
    }
  }

  private renderChronos(entries: OverlayEntry[]): void {
    const panel = this.panels.chronos;
    panel.innerHTML = "";
    const hint = document.createElement("div");
    hint.className = "tool-hint";
    hint.textContent =
      this.pendingCentury === null
        ? "click a century, or two to select a period"
        : `period starts at ${this.pendingCentury}; click the end century`;
    panel.appendChild(hint);
    const strip = document.createElement("div");
    strip.className = "timeline-strip";
    panel.appendChild(strip);
    for (const entry of entries) {
      const cell = document.createElement("button");
      cell.className = "century-cell";
      cell.style.background = hueToCss(entry.hue);
      cell.textContent = entry.label;
      cell.title = `R = ${entry.relevance.toFixed(3)}`;
      const century = entry.payload as number;
      cell.addEventListener("click", () => {
        if (this.pendingCentury === null) {
          this.pendingCentury = century;
          hint.textContent = `period starts at ${century}; click the end century`;
        } else {
          const gesture = chronosInterval(this.pendingCentury, century);
          this.pendingCentury = null;
          this.onGesture(gesture);
        }
      });
      strip.appendChild(cell);
    }
  }

  private renderThema(entries: OverlayEntry[]): void {
    const panel = this.panels.thema;
    panel.innerHTML = "";
    for (const entry of entries) {
      const word = document.createElement("button");
      word.className = "thema-word";
      word.style.color = hueToCss(entry.hue);
      word.dataset.entity = entry.entity;
      word.textContent = entry.label;
      word.title = `R = ${entry.relevance.toFixed(3)}`;
      word.addEventListener("click", () =>
        this.onGesture({ type: "tool_use", tool: "thema", target: entry.entity }),
      );
      panel.appendChild(word);
    }
  }
}
