/** Relevance feedback colors: hue fraction 0 = red through 1 = green. */

export function hueToCss(hue: number): string {
  const clamped = Math.min(1, Math.max(0, hue));
  return `hsl(${Math.round(clamped * 120)}, 72%, 42%)`;
}

export function groupBadge(group: 1 | 2 | 3): string {
  return group === 1 ? "on topic" : group === 2 ? "nearby" : "serendipity";
}
