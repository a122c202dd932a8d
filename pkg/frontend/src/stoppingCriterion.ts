/**
 * Stopping criterion for generation loops, driven by the stream monitor.
 */

import { BoundMonitor, createMonitor, DEFAULT_CHECK_FREQ, DEFAULT_THRESHOLD } from "./boundMonitor.js";

/** Per-token stopping test; returns true when generation should halt. */
export interface StoppingCriterion {
  shouldStop(tokenText: string): Promise<boolean>;
  dispose(): Promise<void>;
}

/**
 * Stop once the stream's compressed size stops growing.
 *
 * Wire it into a decode loop by calling shouldStop with each generated
 * token's text; dispose when the loop ends for any reason.
 */
export class InformationPlateauCriterion implements StoppingCriterion {
  private monitor: BoundMonitor;

  constructor(promptText: string, checkFreq = DEFAULT_CHECK_FREQ, threshold = DEFAULT_THRESHOLD) {
    this.monitor = createMonitor(promptText, checkFreq, threshold);
  }

  async shouldStop(tokenText: string): Promise<boolean> {
    if (this.monitor.hasStopped) return true;
    return this.monitor.observeText(tokenText);
  }

  /** Compressed growth at the last checkpoint, for diagnostics. */
  lastDelta(): number | null {
    return this.monitor.lastDelta();
  }

  async dispose(): Promise<void> {
    await this.monitor.destroy();
  }
}

/** Stop after a fixed number of generated tokens. */
export class MaxTokensCriterion implements StoppingCriterion {
  private count = 0;

  constructor(private readonly maxTokens: number) {}

  async shouldStop(_tokenText: string): Promise<boolean> {
    this.count += 1;
    return this.count >= this.maxTokens;
  }

  async dispose(): Promise<void> {}
}

/** Combine criteria: stop as soon as any of them fires. */
export class AnyCriterion implements StoppingCriterion {
  constructor(private readonly criteria: StoppingCriterion[]) {}

  async shouldStop(tokenText: string): Promise<boolean> {
    for (const criterion of this.criteria) {
      if (await criterion.shouldStop(tokenText)) return true;
    }
    return false;
  }

  async dispose(): Promise<void> {
    for (const criterion of this.criteria) {
      await criterion.dispose();
    }
  }
}
