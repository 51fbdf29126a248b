/** End-to-end checks against a real local service on the fixture corpus:
 * keystroke-to-render latency, deep links, and static-page behavior.
 * Skipped automatically when python3 or the fixture corpus is missing.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, existsSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DiscoverController, DiscoverView } from "../src/discover.js";
import { loadTopWordsPage } from "../src/pages.js";
import type { SearchResponse } from "../src/types.js";

const REPO_ROOT = resolve(__dirname, "..", "..");
const CORPUS = join(REPO_ROOT, "fixtures", "corpus.jsonl");
const TAXONOMIES = join(REPO_ROOT, "fixtures", "taxonomies.jsonl");
const PORT = 8473;
const BASE = `http://127.0.0.1:${PORT}`;

function pythonAvailable(): boolean {
  if (!existsSync(CORPUS)) return false;
  const probe = spawnSync("python3", ["-c", "import incidentdb"], { timeout: 30000 });
  return probe.status === 0;
}

const enabled = pythonAvailable();

class CollectingView implements DiscoverView {
  last: SearchResponse | null = null;
  errors: string[] = [];

  renderResults(response: SearchResponse): void {
    this.last = response;
  }

  renderError(message: string): void {
    this.errors.push(message);
  }
}

function cli(args: string[], dataDir: string): void {
  const result = spawnSync(
    "python3",
    ["-m", "incidentdb.cli", ...args, "--data-dir", dataDir],
    { cwd: REPO_ROOT, timeout: 120000, encoding: "utf-8" },
  );
  if (result.status !== 0) {
    throw new Error(`cli ${args[0]} failed: ${result.stderr}`);
  }
}

function median(samples: number[]): number {
  const ordered = [...samples].sort((a, b) => a - b);
  return ordered[Math.floor(ordered.length / 2)];
}

describe.skipIf(!enabled)("against the local service with the fixture corpus", () => {
  let server: ChildProcess;
  let dataDir: string;

  beforeAll(async () => {
    dataDir = mkdtempSync(join(tmpdir(), "incidentdb-ui-"));
    cli(["ingest", CORPUS], dataDir);
    cli(["taxonomy", "load", TAXONOMIES], dataDir);
    cli(["build-views"], dataDir);
    server = spawn(
      "python3",
      [
        "-m", "incidentdb.cli", "serve",
        "--port", String(PORT),
        "--data-dir", dataDir,
        "--ui-dir", join(REPO_ROOT, "frontend", "dist"),
      ],
      { cwd: REPO_ROOT, stdio: "ignore" },
    );
    const deadline = Date.now() + 60000;
    for (;;) {
      try {
        const response = await fetch(`${BASE}/api/search?q=`);
        if (response.ok) break;
      } catch {
        // not up yet
      }
      if (Date.now() > deadline) throw new Error("server did not start");
      await new Promise((r) => setTimeout(r, 200));
    }
  }, 120000);

  afterAll(() => {
    server?.kill("SIGTERM");
    if (dataDir) rmSync(dataDir, { recursive: true, force: true });
  });

  it("renders each keystroke in under 100 ms median", async () => {
    const api = new ApiClient(BASE);
    const view = new CollectingView();
    const controller = new DiscoverController(api, view);
    const samples: number[] = [];
    for (const phrase of ["facial recognition", "drone crash", "policing"]) {
      for (let cut = 1; cut <= phrase.length; cut++) {
        const started = performance.now();
        await controller.handleInput(phrase.slice(0, cut));
        samples.push(performance.now() - started);
        expect(view.last).not.toBeNull();
      }
    }
    const mid = median(samples);
    console.log(
      `[criterion 10] keystroke-to-render median ${mid.toFixed(1)} ms over ` +
      `${samples.length} keystrokes`,
    );
    expect(mid).toBeLessThan(100);
    expect(view.errors).toEqual([]);
  }, 60000);

  it("narrows progressively while typing (prefix monotonicity observable)", async () => {
    const api = new ApiClient(BASE);
    const view = new CollectingView();
    const controller = new DiscoverController(api, view);
    let previous = Infinity;
    for (const text of ["p", "po", "pol", "poli", "polic", "polici"]) {
      await controller.handleInput(text);
      expect(view.last!.totalHits).toBeLessThanOrEqual(previous);
      previous = view.last!.totalHits;
    }
  }, 30000);

  it("clearing the box restores the full corpus with full facet counts", async () => {
    const api = new ApiClient(BASE);
    const view = new CollectingView();
    const controller = new DiscoverController(api, view);
    await controller.handleInput("drone");
    await controller.handleInput("");
    expect(view.last!.totalHits).toBe(1000);
    const sourceCounts = view.last!.facetCounts.source;
    expect(Object.values(sourceCounts).reduce((a, b) => a + b, 0)).toBe(1000);
  }, 30000);

  it("deep links reproduce query and filters exactly", async () => {
    const api = new ApiClient(BASE);
    const first = new CollectingView();
    const controller = new DiscoverController(api, first);
    let lastHash = "";
    const linked = new DiscoverController(api, first, (hash) => (lastHash = hash));
    await linked.handleInput("facial recog");
    await linked.toggleFacet("Fairness", "Surveillance");

    const second = new CollectingView();
    const restored = new DiscoverController(api, second);
    await restored.restore(lastHash);
    expect(restored.state.q).toBe("facial recog");
    expect(restored.state.filters.get("Fairness")).toEqual(new Set(["Surveillance"]));
    expect(second.last!.totalHits).toBe(linked.lastResponse!.totalHits);
  }, 30000);

  it("facet toggles filter and untoggle restores the original result", async () => {
    const api = new ApiClient(BASE);
    const view = new CollectingView();
    const controller = new DiscoverController(api, view);
    await controller.handleInput("camera ");
    const baseline = view.last!.totalHits;
    const source = Object.keys(view.last!.facetCounts.source)[0];
    await controller.toggleFacet("source", source);
    expect(view.last!.totalHits).toBeLessThanOrEqual(baseline);
    for (const hit of view.last!.hits) {
      expect(hit.source).toBe(source);
    }
    await controller.toggleFacet("source", source);
    expect(view.last!.totalHits).toBe(baseline);
  }, 30000);

  it("top-words page issues zero search requests", async () => {
    const api = new ApiClient(BASE);
    const view = await loadTopWordsPage(api);
    expect(view.payload.counts.length).toBeGreaterThan(0);
    expect(api.searchCalls).toBe(0);
    expect(api.viewCalls).toBe(1);
  }, 30000);

  it("serves the built UI shell", async () => {
    const response = await fetch(`${BASE}/`);
    expect(response.status).toBe(200);
    const html = await response.text();
    expect(html).toContain("Incident Database");
  }, 30000);
});
