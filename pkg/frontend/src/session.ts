/** Review session state: a queue in server order plus a cursor.
 *
 * The server's per-reviewer order is authoritative and never re-sorted
 * client-side; recorded verdicts are tracked locally only to drive the
 * progress counter and the "next unrated" cursor.
 */

import type { ItemView } from "./types.js";

export const SCORE_LABELS: ReadonlyArray<{ score: number; label: string }> = [
  { score: -2, label: "definitely wrong" },
  { score: -1, label: "probably wrong" },
  { score: 0, label: "not sure" },
  { score: 1, label: "probably good" },
  { score: 2, label: "definitely good" },
];

/** Keyboard shortcuts: digits 1..5 map onto the scale low to high. */
export function scoreForKey(key: string): number | null {
  const index = "12345".indexOf(key);
  if (index < 0) return null;
  const entry = SCORE_LABELS[index];
  return entry ? entry.score : null;
}

export interface Progress {
  rated: number;
  total: number;
  text: string;
}

export class ReviewSession {
  private readonly verdicts = new Map<string, number>();
  private cursor = 0;

  constructor(readonly items: ItemView[]) {
    for (const item of items) {
      if (item.existing_verdict !== null) {
        this.verdicts.set(item.id, item.existing_verdict);
      }
    }
    this.cursor = this.firstUnratedFrom(0);
  }

  get current(): ItemView | null {
    return this.items[this.cursor] ?? null;
  }

  get position(): number {
    return this.cursor;
  }

  isRated(id: string): boolean {
    return this.verdicts.has(id);
  }

  verdictFor(id: string): number | undefined {
    return this.verdicts.get(id);
  }

  progress(): Progress {
    const rated = this.verdicts.size;
    return { rated, total: this.items.length, text: `${rated}/${this.items.length}` };
  }

  get done(): boolean {
    return this.verdicts.size >= this.items.length;
  }

  private firstUnratedFrom(start: number): number {
    for (let i = 0; i < this.items.length; i++) {
      const idx = (start + i) % Math.max(this.items.length, 1);
      const item = this.items[idx];
      if (item && !this.verdicts.has(item.id)) return idx;
    }
    return this.items.length; // everything rated
  }

  /** Record a confirmed (server-acknowledged) verdict and advance to the
   * next unrated item. Never called optimistically. */
  recordAndAdvance(id: string, score: number): void {
    this.verdicts.set(id, score);
    this.cursor = this.firstUnratedFrom(this.cursor);
  }

  goTo(index: number): void {
    if (index >= 0 && index < this.items.length) this.cursor = index;
  }
}
