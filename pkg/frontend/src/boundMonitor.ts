/**
 * Binding to the stream monitor: an opaque monitor handle whose state lives
 * in a `lilguard monitor` child process.
 *
 * Tokens are framed as JSON lines (`--unit jsonl`), so token text may
 * contain any characters including newlines.  The monitor emits one event
 * per checkpoint; between checkpoints every observation is a "continue",
 * so observeText only awaits the child on checkpoint tokens.
 */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

const PYTHON = process.env.LILGUARD_PYTHON ?? "python3";

export const DEFAULT_CHECK_FREQ = 250;
export const DEFAULT_THRESHOLD = 20;

export class MonitorError extends Error {}

/** Monitor event as emitted on the child's stdout. */
interface MonitorEvent {
  event: "check" | "stop" | "eos";
  tokens: number;
  compressed: number;
  delta?: number;
  reason?: string;
}

/** Reads newline-delimited JSON events from a stream. */
class EventReader {
  private buffer = "";
  private queue: MonitorEvent[] = [];
  private waiter: ((event: MonitorEvent) => void) | null = null;
  private failure: Error | null = null;
  private failWaiter: ((err: Error) => void) | null = null;

  push(chunk: string): void {
    this.buffer += chunk;
    let idx;
    while ((idx = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, idx);
      this.buffer = this.buffer.slice(idx + 1);
      if (!line.trim()) continue;
      let event: MonitorEvent;
      try {
        event = JSON.parse(line) as MonitorEvent;
      } catch {
        this.fail(new MonitorError(`unparseable monitor event: ${line}`));
        return;
      }
      if (this.waiter) {
        const resolve = this.waiter;
        this.waiter = null;
        this.failWaiter = null;
        resolve(event);
      } else {
        this.queue.push(event);
      }
    }
  }

  fail(err: Error): void {
    this.failure = err;
    if (this.failWaiter) {
      const reject = this.failWaiter;
      this.waiter = null;
      this.failWaiter = null;
      reject(err);
    }
  }

  next(): Promise<MonitorEvent> {
    const queued = this.queue.shift();
    if (queued) return Promise.resolve(queued);
    if (this.failure) return Promise.reject(this.failure);
    return new Promise((resolve, reject) => {
      this.waiter = resolve;
      this.failWaiter = reject;
    });
  }
}

export class BoundMonitor {
  readonly checkFreq: number;
  readonly threshold: number;

  private child: ChildProcessWithoutNullStreams;
  private reader = new EventReader();
  private tokenCount = 0;
  private stopped = false;
  private destroyed = false;
  private childGone = false;
  private lastCheckpointDelta: number | null = null;
  private lastCompressed: number | null = null;
  private tempDir: string | null = null;
  private readonly exited: Promise<number | null>;

  constructor(prefillText: string, checkFreq = DEFAULT_CHECK_FREQ, threshold = DEFAULT_THRESHOLD) {
    if (!prefillText.isWellFormed()) {
      throw new MonitorError("prefill is not valid UTF-8 text");
    }
    this.checkFreq = checkFreq;
    this.threshold = threshold;

    const args = [
      "-m", "lilguard", "monitor",
      "--unit", "jsonl",
      "--freq", String(checkFreq),
      "--threshold", String(threshold),
    ];
    if (prefillText.length > 0) {
      this.tempDir = mkdtempSync(join(tmpdir(), "lilguard-"));
      const prefillPath = join(this.tempDir, "prefill.txt");
      writeFileSync(prefillPath, prefillText, "utf-8");
      args.push("--prefill", prefillPath);
    }
    this.child = spawn(PYTHON, args, { stdio: ["pipe", "pipe", "pipe"] });
    this.child.stdout.setEncoding("utf-8");
    this.child.stdout.on("data", (chunk: string) => this.reader.push(chunk));
    this.child.stdin.on("error", () => this.childGone = true);
    this.child.on("error", (err) => {
      this.childGone = true;
      this.reader.fail(new MonitorError(`monitor process failed: ${err.message}`));
    });
    this.exited = new Promise((resolve) => {
      this.child.on("close", (code) => {
        this.childGone = true;
        this.reader.fail(new MonitorError(`monitor process exited with code ${code}`));
        resolve(code);
      });
    });
  }

  /**
   * Feed one token's text; resolves true exactly when the monitor reports an
   * information plateau.  Must be awaited in token order.
   */
  async observeText(tokenText: string): Promise<boolean> {
    if (this.destroyed) {
      throw new MonitorError("observeText() after destroy()");
    }
    if (this.stopped) {
      throw new MonitorError("observeText() after a stop decision");
    }
    if (this.childGone) {
      throw new MonitorError("monitor process is no longer running");
    }
    if (!tokenText.isWellFormed()) {
      throw new MonitorError("token is not valid UTF-8 text");
    }
    this.child.stdin.write(JSON.stringify(tokenText) + "\n");
    this.tokenCount += 1;
    if (this.tokenCount % this.checkFreq !== 0) {
      return false;
    }
    const event = await this.reader.next();
    if (event.event === "eos") {
      throw new MonitorError("monitor stream ended unexpectedly");
    }
    this.lastCheckpointDelta = event.delta ?? null;
    this.lastCompressed = event.compressed;
    if (event.event === "stop") {
      this.stopped = true;
      this.child.stdin.end();
      return true;
    }
    return false;
  }

  /** Compressed-size growth at the most recent checkpoint, if any ran. */
  lastDelta(): number | null {
    if (this.destroyed) {
      throw new MonitorError("lastDelta() after destroy()");
    }
    return this.lastCheckpointDelta;
  }

  /** Serialized compressed size at the most recent checkpoint, if any ran. */
  lastCompressedSize(): number | null {
    if (this.destroyed) {
      throw new MonitorError("lastCompressedSize() after destroy()");
    }
    return this.lastCompressed;
  }

  get observedTokens(): number {
    return this.tokenCount;
  }

  get hasStopped(): boolean {
    return this.stopped;
  }

  /** Tear down the child process; the handle is unusable afterwards. */
  async destroy(): Promise<void> {
    if (this.destroyed) return;
    this.destroyed = true;
    this.child.stdin.end();
    const outcome = await Promise.race([
      this.exited.then(() => "exited" as const),
      new Promise<"timeout">((resolve) => {
        const timer = setTimeout(() => resolve("timeout"), 2000);
        timer.unref();
      }),
    ]);
    if (outcome === "timeout") {
      this.child.kill("SIGKILL");
      await this.exited;
    }
    if (this.tempDir) {
      rmSync(this.tempDir, { recursive: true, force: true });
      this.tempDir = null;
    }
  }
}

/** Start a monitor over a prefill with the given checkpoint parameters. */
export function createMonitor(
  prefillText: string,
  checkFreq = DEFAULT_CHECK_FREQ,
  threshold = DEFAULT_THRESHOLD,
): BoundMonitor {
  return new BoundMonitor(prefillText, checkFreq, threshold);
}

/** Token savings percentage of a guarded run against its baseline. */
export function savings(baselineTokens: number, guardedTokens: number): number {
  if (baselineTokens === 0) {
    throw new MonitorError("savings undefined for a zero-token baseline");
  }
  return (100.0 * (baselineTokens - guardedTokens)) / baselineTokens;
}
