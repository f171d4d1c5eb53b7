/** DOM wiring for the console page. */

import { ApiClient } from "./api.js";
import { MemoryStore, QueryHistory, type StringStore } from "./history.js";
import {
  renderAnswer,
  renderDoc,
  renderError,
  renderHealth,
  renderHistory,
} from "./render.js";

function storage(): StringStore {
  try {
    window.localStorage.setItem("clinicalqa-probe", "1");
    window.localStorage.removeItem("clinicalqa-probe");
    return window.localStorage;
  } catch {
    return new MemoryStore();
  }
}

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id} in the page`);
  return node as T;
}

export function start(): void {
  const form = element<HTMLFormElement>("ask-form");
  const questionInput = element<HTMLInputElement>("question");
  const serviceInput = element<HTMLInputElement>("service-url");
  const answerBox = element<HTMLDivElement>("answer");
  const docBox = element<HTMLDivElement>("doc-view");
  const healthBox = element<HTMLSpanElement>("health");
  const historyBox = element<HTMLDivElement>("history");
  const history = new QueryHistory(storage());

  const client = () => new ApiClient(serviceInput.value.replace(/\/+$/, ""));

  const refreshHistory = () => {
    historyBox.innerHTML = renderHistory(history.list());
  };

  const refreshHealth = async () => {
    try {
      healthBox.innerHTML = renderHealth(await client().health());
    } catch (err) {
      healthBox.innerHTML = renderError(err);
    }
  };

  const ask = async (question: string) => {
    answerBox.innerHTML = `<div class="loading">Searching…</div>`;
    docBox.innerHTML = "";
    try {
      const payload = await client().ask(question);
      answerBox.innerHTML = renderAnswer(payload);
      history.add(question);
      refreshHistory();
    } catch (err) {
      answerBox.innerHTML = renderError(err);
    }
  };

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const question = questionInput.value.trim();
    if (question) void ask(question);
  });

  answerBox.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLAnchorElement>(".doc-link");
    if (!target) return;
    event.preventDefault();
    const docId = target.dataset.docId;
    if (!docId) return;
    void (async () => {
      try {
        docBox.innerHTML = renderDoc(await client().getDoc(docId));
        docBox.scrollIntoView({ behavior: "smooth" });
      } catch (err) {
        docBox.innerHTML = renderError(err);
      }
    })();
  });

  historyBox.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLAnchorElement>(".history-item");
    if (!target) return;
    event.preventDefault();
    questionInput.value = target.textContent ?? "";
    void ask(questionInput.value);
  });

  serviceInput.addEventListener("change", () => void refreshHealth());
  refreshHistory();
  void refreshHealth();
}

if (typeof document !== "undefined" && document.getElementById("ask-form")) {
  start();
}
