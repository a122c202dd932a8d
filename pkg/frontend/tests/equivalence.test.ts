import { execFileSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { createMonitor } from "../src/index.js";

const PYTHON = process.env.LILGUARD_PYTHON ?? "python3";
const ORACLE = new URL("./native_decisions.py", import.meta.url).pathname;

/** Deterministic 32-bit PRNG so both sides see the same stream. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomTokens(seed: number, count: number): string[] {
  const rand = mulberry32(seed);
  const pool = "abcdefghijklmnopqrstuvwxyz0123456789äöüλμ∑ ";
  const tokens: string[] = [];
  for (let i = 0; i < count; i++) {
    const len = 2 + Math.floor(rand() * 9);
    let token = "";
    for (let j = 0; j < len; j++) {
      token += pool[Math.floor(rand() * pool.length)];
    }
    // Sprinkle in framing hazards: newlines, quotes, backslashes.
    if (rand() < 0.05) token += "\n";
    if (rand() < 0.05) token = '"' + token + "\\";
    tokens.push(token + " ");
  }
  return tokens;
}

function nativeDecisions(tokens: string[], freq: number, threshold: number, prefill: string): boolean[] {
  const dir = mkdtempSync(join(tmpdir(), "lilguard-test-"));
  try {
    const args = [ORACLE, String(freq), String(threshold)];
    if (prefill) {
      const prefillPath = join(dir, "prefill.txt");
      writeFileSync(prefillPath, prefill, "utf-8");
      args.push(prefillPath);
    }
    const stdin = tokens.map((t) => JSON.stringify(t)).join("\n") + "\n";
    const stdout = execFileSync(PYTHON, args, { input: stdin, encoding: "utf-8" });
    return stdout
      .trim()
      .split("\n")
      .filter((line) => line.length > 0)
      .map((line) => line === "1");
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

async function boundDecisions(tokens: string[], freq: number, threshold: number, prefill: string): Promise<boolean[]> {
  const monitor = createMonitor(prefill, freq, threshold);
  const decisions: boolean[] = [];
  try {
    for (const token of tokens) {
      const stop = await monitor.observeText(token);
      decisions.push(stop);
      if (stop) break;
    }
  } finally {
    await monitor.destroy();
  }
  return decisions;
}

describe("boundary equivalence", () => {
  it("matches the native decision sequence on a 1000-token randomized stream", async () => {
    const tokens = randomTokens(0xbeef, 1000);
    const native = nativeDecisions(tokens, 250, 20, "prompt: ");
    const bound = await boundDecisions(tokens, 250, 20, "prompt: ");
    expect(bound.length).toBe(1000);
    expect(native.length).toBe(1000);
    expect(bound).toEqual(native);
    expect(bound.every((d) => d === false)).toBe(true);
  }, 60000);

  it("matches the native decision sequence on a looping-sentence stream", async () => {
    const phrase = ["so ", "it ", "goes ", "on "];
    const tokens: string[] = [];
    for (let i = 0; i < 1000; i++) tokens.push(phrase[i % phrase.length]);
    const native = nativeDecisions(tokens, 250, 20, "");
    const bound = await boundDecisions(tokens, 250, 20, "");
    expect(bound).toEqual(native);
    expect(bound[bound.length - 1]).toBe(true);
    expect(bound.length % 250).toBe(0);
  }, 60000);

  it("agrees at a non-default frequency and threshold", async () => {
    const tokens = randomTokens(77, 300).map((t, i) => (i % 3 === 0 ? "ab " : t));
    const native = nativeDecisions(tokens, 50, 40, "seed text ");
    const bound = await boundDecisions(tokens, 50, 40, "seed text ");
    expect(bound).toEqual(native);
  }, 60000);
});
