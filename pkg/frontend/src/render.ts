/** Pure HTML-string renderers.
 *
 * Kept DOM-free so tests can assert on the markup directly; main.ts owns
 * the only innerHTML assignments. All service-provided text goes through
 * escapeHtml.
 */

import type { AskPayload, AbstractPayload, DocPayload, HealthPayload } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function renderSentence(sentence: { text: string; highlighted: boolean }): string {
  const text = escapeHtml(sentence.text);
  return sentence.highlighted
    ? `<mark class="answer-sentence">${text}</mark>`
    : `<span class="sentence">${text}</span>`;
}

export function renderCard(abstract: AbstractPayload, rank: number): string {
  const sentences = abstract.sentences.map(renderSentence).join(" ");
  const score = (abstract.abstract_score * 100).toFixed(1);
  return [
    `<article class="card" data-doc-id="${escapeHtml(abstract.doc_id)}" data-rank="${rank}">`,
    `<header><span class="rank">#${rank}</span> `,
    `<a href="#" class="doc-link" data-doc-id="${escapeHtml(abstract.doc_id)}">`,
    `${escapeHtml(abstract.title)}</a> `,
    `<span class="score">${score}%</span></header>`,
    `<p class="abstract-body">${sentences}</p>`,
    `</article>`,
  ].join("");
}

export function renderAnswer(payload: AskPayload): string {
  if (!payload.answerable) {
    return [
      `<div class="refusal">`,
      `<p class="refusal-title">This question cannot be answered from the literature.</p>`,
      `<p class="refusal-reason">${escapeHtml(payload.reason)}</p>`,
      `</div>`,
    ].join("");
  }
  const header = [
    `<div class="answer-meta">focus class ${payload.class_number} `,
    `(${payload.focus_tags.map(escapeHtml).join(", ")})`,
    payload.retrieval_fallback
      ? `<span class="fallback-note"> — no abstract matched both vocabularies; showing partial matches</span>`
      : "",
    `</div>`,
  ].join("");
  if (payload.results.length === 0) {
    return `${header}<div class="empty">No matching abstracts were found.</div>`;
  }
  const cards = payload.results
    .map((abstract, i) => renderCard(abstract, i + 1))
    .join("");
  return `${header}<div class="cards">${cards}</div>`;
}

export function renderError(error: unknown): string {
  const message = error instanceof Error ? error.message : String(error);
  return `<div class="error">Request failed: ${escapeHtml(message)}</div>`;
}

export function renderDoc(doc: DocPayload): string {
  const label = doc.label
    ? `<span class="label">${escapeHtml(doc.label)}</span>`
    : "";
  const sentences = doc.sentences
    .map((s) => `<li value="${s.index}">${escapeHtml(s.text)}</li>`)
    .join("");
  return [
    `<section class="doc" data-doc-id="${escapeHtml(doc.doc_id)}">`,
    `<h2>${escapeHtml(doc.title)}</h2>${label}`,
    `<ol class="doc-sentences" start="0">${sentences}</ol>`,
    `</section>`,
  ].join("");
}

export function renderHealth(health: HealthPayload): string {
  return (
    `<span class="health health-${escapeHtml(health.status)}">` +
    `${escapeHtml(health.status)} · ${health.evidence_docs}/${health.docs} evidence docs · ` +
    `${escapeHtml(health.backend)} backend</span>`
  );
}

export function renderHistory(questions: string[]): string {
  if (questions.length === 0) {
    return `<p class="history-empty">No questions yet.</p>`;
  }
  const items = questions
    .map((q) => `<li><a href="#" class="history-item">${escapeHtml(q)}</a></li>`)
    .join("");
  return `<ul class="history-list">${items}</ul>`;
}
