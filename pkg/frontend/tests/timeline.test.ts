import { describe, expect, it } from "vitest";

import { activeSaveIds, renderTimeline } from "../src/timeline.js";
import { detailedFixture, overviewFixture } from "./fixtures.js";

describe("timeline rendering", () => {
  it("renders one group per session, newest first", () => {
    const el = renderTimeline(overviewFixture());
    const sessions = el.querySelectorAll(".session-group");
    expect(sessions).toHaveLength(3);
    const texts = [...el.querySelectorAll(".query-text")].map((n) => n.textContent);
    expect(texts).toEqual(["indigenous people", "plains treaties", "first nations history"]);
  });

  it("links every save entry to its enclosing query box", () => {
    const el = renderTimeline(overviewFixture());
    const entries = [...el.querySelectorAll(".save-entry")];
    expect(entries.length).toBeGreaterThan(0);
    for (const entry of entries) {
      const group = entry.closest(".query-group") as HTMLElement;
      expect((entry as HTMLElement).dataset.queryId).toBe(group.dataset.queryId);
      expect(entry.querySelector(".connector")).not.toBeNull();
    }
  });

  it("renders a zero-save query as an empty but present box", () => {
    const el = renderTimeline(overviewFixture());
    const groups = [...el.querySelectorAll(".query-group")] as HTMLElement[];
    const empty = groups.find((g) => g.dataset.queryId === "e00000001");
    expect(empty).toBeDefined();
    expect(empty!.querySelectorAll(".save-entry")).toHaveLength(0);
  });

  it("marks removed entries but keeps them in place", () => {
    const el = renderTimeline(overviewFixture());
    const removed = el.querySelector('[data-save-id="e00000005"]') as HTMLElement;
    expect(removed.classList.contains("removed")).toBe(true);
    expect(removed.querySelector(".save-title")!.textContent).toBe("Treaty Relations");
    expect(el.querySelectorAll(".save-entry")).toHaveLength(3);
  });

  it("shows icon and title only at overview detail, full cards at detailed", () => {
    const overview = renderTimeline(overviewFixture());
    expect(overview.querySelectorAll(".save-card")).toHaveLength(0);
    expect(overview.querySelectorAll(".save-icon")).toHaveLength(3);

    const detailed = renderTimeline(detailedFixture());
    const cards = detailed.querySelectorAll(".save-card");
    expect(cards).toHaveLength(3);
    expect(cards[0]!.querySelector(".card-authors")!.textContent).toBe("L. Crowfoot");
  });

  it("makes query boxes clickable only when a reissue handler is given", () => {
    const inert = renderTimeline(overviewFixture());
    expect(inert.querySelectorAll(".query-box.clickable")).toHaveLength(0);

    let clicked: string | null = null;
    const active = renderTimeline(overviewFixture(), { onReissue: (id) => (clicked = id) });
    const boxes = active.querySelectorAll<HTMLButtonElement>(".query-box.clickable");
    expect(boxes).toHaveLength(3);
    boxes[1]!.click();
    expect(clicked).toBe("e00000004");
  });

  it("derives active saves from the view, ignoring removed entries", () => {
    expect(activeSaveIds(overviewFixture())).toEqual(new Set(["b001", "d001"]));
  });
});
