import { describe, expect, it } from "vitest";

import { ReviewSession, SCORE_LABELS, scoreForKey } from "../src/session.js";
import type { ItemView } from "../src/types.js";

function item(id: string, rated: number | null = null): ItemView {
  return {
    id,
    kind: "ConflationSuspect",
    payload: {
      cluster: `http://cso.test/topics/${id}`,
      labels: ["a", "b"],
      per_label: [
        { label: "a", mean_sim: 0.1, std_sim: 0 },
        { label: "b", mean_sim: 0.1, std_sim: 0 },
      ],
      cluster_mean: 0.1,
      cluster_std: 0,
      n: 2,
    },
    status: "open",
    existing_verdict: rated,
    existing_category: null,
  };
}

describe("scoreForKey", () => {
  it("maps 1..5 onto the -2..2 scale in order", () => {
    expect(scoreForKey("1")).toBe(-2);
    expect(scoreForKey("2")).toBe(-1);
    expect(scoreForKey("3")).toBe(0);
    expect(scoreForKey("4")).toBe(1);
    expect(scoreForKey("5")).toBe(2);
  });

  it("ignores other keys", () => {
    expect(scoreForKey("6")).toBeNull();
    expect(scoreForKey("a")).toBeNull();
    expect(scoreForKey("Enter")).toBeNull();
  });

  it("covers exactly the five verdict labels", () => {
    expect(SCORE_LABELS.map((s) => s.label)).toEqual([
      "definitely wrong",
      "probably wrong",
      "not sure",
      "probably good",
      "definitely good",
    ]);
  });
});

describe("ReviewSession", () => {
  it("empty queue reports the empty state", () => {
    const session = new ReviewSession([]);
    expect(session.current).toBeNull();
    expect(session.done).toBe(true);
    expect(session.progress().text).toBe("0/0");
  });

  it("counts previously rated items in progress", () => {
    const session = new ReviewSession([
      item("i1", -2),
      item("i2"),
      item("i3", 1),
      item("i4"),
      item("i5"),
    ]);
    expect(session.progress().text).toBe("2/5");
    expect(session.isRated("i1")).toBe(true);
    expect(session.isRated("i2")).toBe(false);
  });

  it("starts on the first unrated item, preserving server order", () => {
    const session = new ReviewSession([item("i1", 0), item("i2"), item("i3")]);
    expect(session.current?.id).toBe("i2");
  });

  it("advances to the next unrated after a confirmed verdict", () => {
    const session = new ReviewSession([item("i1"), item("i2", 1), item("i3")]);
    expect(session.current?.id).toBe("i1");
    session.recordAndAdvance("i1", -2);
    expect(session.current?.id).toBe("i3"); // i2 already rated, skipped
    session.recordAndAdvance("i3", 2);
    expect(session.done).toBe(true);
    expect(session.progress().text).toBe("3/3");
  });

  it("wraps around to earlier unrated items", () => {
    const session = new ReviewSession([item("i1"), item("i2"), item("i3")]);
    session.goTo(2);
    session.recordAndAdvance("i3", 0);
    expect(session.current?.id).toBe("i1");
  });

  it("never reorders the queue", () => {
    const items = [item("z"), item("a"), item("m")];
    const session = new ReviewSession(items);
    expect(session.items.map((i) => i.id)).toEqual(["z", "a", "m"]);
  });
});
