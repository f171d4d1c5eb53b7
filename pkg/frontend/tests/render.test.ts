/** Rendering against recorded service payloads. */

import { describe, expect, it } from "vitest";

import type {
  AbstractPayload,
  AnsweredPayload,
  DocPayload,
  RefusalPayload,
} from "../src/api.js";
import { ApiError } from "../src/api.js";
import {
  escapeHtml,
  renderAnswer,
  renderCard,
  renderDoc,
  renderError,
  renderHealth,
  renderHistory,
} from "../src/render.js";

import answeredJson from "../fixtures/answered.json";
import emptyJson from "../fixtures/empty.json";
import refusalJson from "../fixtures/refusal.json";
import docJson from "../fixtures/doc.json";

const answered = answeredJson as unknown as AnsweredPayload;
const empty = emptyJson as unknown as AnsweredPayload;
const refusal = refusalJson as unknown as RefusalPayload;
const doc = docJson as unknown as DocPayload;

describe("answer cards", () => {
  it("renders one card per result in payload order", () => {
    const html = renderAnswer(answered);
    const ids = [...html.matchAll(/<article class="card" data-doc-id="([^"]+)" data-rank="(\d+)"/g)];
    expect(ids.map((m) => m[1])).toEqual(answered.results.map((r) => r.doc_id));
    expect(ids.map((m) => Number(m[2]))).toEqual(
      answered.results.map((_, i) => i + 1),
    );
  });

  it("shows rank numbers and titles", () => {
    const html = renderAnswer(answered);
    expect(html).toContain(`<span class="rank">#1</span>`);
    expect(html).toContain(escapeHtml(answered.results[0]!.title));
  });

  it("marks exactly the highlighted sentences", () => {
    for (const abstract of answered.results) {
      const html = renderCard(abstract, 1);
      for (const sentence of abstract.sentences) {
        const marked = `<mark class="answer-sentence">${escapeHtml(sentence.text)}</mark>`;
        if (sentence.highlighted) {
          expect(html).toContain(marked);
        } else {
          expect(html).not.toContain(marked);
          expect(html).toContain(escapeHtml(sentence.text));
        }
      }
      const markCount = (html.match(/<mark class="answer-sentence">/g) ?? []).length;
      const flagged = abstract.sentences.filter((s) => s.highlighted).length;
      expect(markCount).toBe(flagged);
    }
  });

  it("escapes markup smuggled inside service text", () => {
    const hostile: AbstractPayload = {
      ...answered.results[0]!,
      title: `<script>alert("x")</script>`,
      sentences: [
        { index: 0, text: `<img src=x onerror=alert(1)>`, line_score: 1, highlighted: true },
      ],
    };
    const html = renderCard(hostile, 1);
    expect(html).not.toContain("<script>");
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("answer states", () => {
  it("refusals render a reason, not cards", () => {
    const html = renderAnswer(refusal);
    expect(html).toContain(`class="refusal"`);
    expect(html).toContain(escapeHtml(refusal.reason));
    expect(html).not.toContain(`class="card"`);
    expect(html).not.toContain(`class="error"`);
  });

  it("empty result lists render the empty state", () => {
    const html = renderAnswer(empty);
    expect(html).toContain(`class="empty"`);
    expect(html).not.toContain(`class="card"`);
    expect(html).not.toContain(`class="refusal"`);
  });

  it("errors render distinctly from refusals and empties", () => {
    const html = renderError(new ApiError("service unreachable", null));
    expect(html).toContain(`class="error"`);
    expect(html).toContain("service unreachable");
    expect(html).not.toContain(`class="refusal"`);
    expect(html).not.toContain(`class="empty"`);
  });

  it("flags retrieval fallback in the metadata line", () => {
    const html = renderAnswer({ ...answered, retrieval_fallback: true });
    expect(html).toContain("fallback-note");
    expect(renderAnswer(answered)).not.toContain("fallback-note");
  });
});

describe("document view", () => {
  it("renders title, label, and ordered sentences", () => {
    const html = renderDoc(doc);
    expect(html).toContain(escapeHtml(doc.title));
    expect(html).toContain(`class="label"`);
    const items = [...html.matchAll(/<li value="(\d+)">/g)].map((m) => Number(m[1]));
    expect(items).toEqual(doc.sentences.map((s) => s.index));
  });

  it("omits the label chip when the doc has none", () => {
    const { label: _label, ...rest } = doc;
    expect(renderDoc(rest)).not.toContain(`class="label"`);
  });
});

describe("chrome", () => {
  it("health line shows corpus sizes and backend", () => {
    const html = renderHealth({ status: "ok", docs: 50, evidence_docs: 32, backend: "cython" });
    expect(html).toContain("32/50 evidence docs");
    expect(html).toContain("cython backend");
  });

  it("history renders items or the empty note", () => {
    expect(renderHistory([])).toContain("history-empty");
    const html = renderHistory(["first question", "second question"]);
    const items = [...html.matchAll(/<li>/g)];
    expect(items).toHaveLength(2);
    expect(html.indexOf("first question")).toBeLessThan(html.indexOf("second question"));
  });
});
