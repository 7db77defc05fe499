// Context windows around byte-addressed spans.

import { describe, expect, it } from "vitest";

import { contextWindow } from "../src/context.js";

describe("contextWindow", () => {
  const doc = "Σήμερα εδώ: κέφαλι, τέλος.";

  it("slices the flagged word by its byte span", () => {
    const bytes = new TextEncoder().encode(doc);
    const word = "κέφαλι";
    const start = doc.indexOf(word);
    const byteStart = new TextEncoder().encode(doc.slice(0, start)).length;
    const byteEnd = byteStart + new TextEncoder().encode(word).length;
    expect(bytes.length).toBeGreaterThan(byteEnd);

    const ctx = contextWindow(doc, [byteStart, byteEnd]);
    expect(ctx.word).toBe(word);
    expect(ctx.before).toBe("Σήμερα εδώ: ");
    expect(ctx.after).toBe(", τέλος.");
  });

  it("clamps the window at the document edges", () => {
    const ctx = contextWindow("εδώ", [0, 6], 60);
    expect(ctx.before).toBe("");
    expect(ctx.word).toBe("εδώ");
    expect(ctx.after).toBe("");
  });

  it("drops a split multibyte character at the window edge", () => {
    // width 1 lands mid-character for Greek (2 bytes per letter)
    const doc = "αβγ";
    const ctx = contextWindow(doc, [2, 4], 1);
    expect(ctx.word).toBe("β");
    expect(ctx.before).toBe("");  // half of α is dropped, not garbled
    expect(ctx.after).toBe("");
  });
});
