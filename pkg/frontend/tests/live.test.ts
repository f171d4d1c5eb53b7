/** Round trip against a real service instance.
 *
 * Spawns the Python service on a spare port, asks a question with a known
 * best abstract, and checks the rendered output. Skipped when the backend
 * package is not installed (e.g. a frontend-only checkout).
 */

import { type ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderAnswer } from "../src/render.js";

const PORT = 8752;
const BASE = `http://127.0.0.1:${PORT}`;

const SERVER_SCRIPT = `
import sys
import uvicorn
from clinicalqa.config import bundled_config
from clinicalqa.pipeline import build_all
from clinicalqa.service import create_app

config = bundled_config(sys.argv[1])
pipeline = build_all(config)
uvicorn.run(create_app(config, pipeline), host="127.0.0.1", port=int(sys.argv[2]),
            log_level="warning")
`;

function backendAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import clinicalqa"], { timeout: 20000 });
  return probe.status === 0;
}

const hasBackend = backendAvailable();

describe.skipIf(!hasBackend)("live service round trip", () => {
  let server: ChildProcess;
  const client = new ApiClient(BASE);

  beforeAll(async () => {
    const workdir = mkdtempSync(join(tmpdir(), "clinicalqa-live-"));
    server = spawn("python3", ["-c", SERVER_SCRIPT, workdir, String(PORT)], {
      stdio: ["ignore", "ignore", "pipe"],
    });
    let stderr = "";
    server.stderr?.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
    });
    const deadline = Date.now() + 45000;
    for (;;) {
      if (server.exitCode !== null) {
        throw new Error(`service exited early (${server.exitCode}): ${stderr}`);
      }
      try {
        const health = await client.health();
        if (health.status === "ok") return;
      } catch {
        /* not up yet */
      }
      if (Date.now() > deadline) {
        throw new Error(`service never became healthy: ${stderr}`);
      }
      await new Promise((resolve) => setTimeout(resolve, 300));
    }
  }, 60000);

  afterAll(() => {
    server?.kill();
  });

  it("returns and renders the expected top abstract for a gold question", async () => {
    const payload = await client.ask("What is the drug of choice for status epilepticus?");
    expect(payload.answerable).toBe(true);
    if (!payload.answerable) return; // narrow the union for TypeScript
    expect(payload.results[0]?.doc_id).toBe("20010001");

    const html = renderAnswer(payload);
    expect(html).toContain("Lorazepam versus diazepam");
    const topCard = html.indexOf(`data-doc-id="20010001" data-rank="1"`);
    expect(topCard).toBeGreaterThan(-1);
    expect(html).toContain(`<mark class="answer-sentence">`);
  }, 30000);

  it("fetches the top document for the detail view", async () => {
    const doc = await client.getDoc("20010001");
    expect(doc.title).toContain("Lorazepam versus diazepam");
    expect(doc.sentences.length).toBeGreaterThan(0);
  });

  it("refuses out-of-scope questions", async () => {
    const payload = await client.ask("Who funded the hospital registry?");
    expect(payload.answerable).toBe(false);
    if (payload.answerable) return;
    expect(payload.reason.length).toBeGreaterThan(0);
  });
});
