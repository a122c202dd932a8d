#!/usr/bin/env node
/**
 * Sample integration: a mock generation callback wired to the plateau
 * criterion.  The "model" keeps emitting the same phrase once it runs out
 * of ideas; the criterion cuts it off at the first quiet checkpoint.
 */

import { AnyCriterion, InformationPlateauCriterion, MaxTokensCriterion, savings } from "../src/index.js";

const LOOP = ["and ", "so ", "it ", "goes "];

function* mockGenerator(): Generator<string> {
  // Fresh content first: numbered field notes.
  for (let i = 0; i < 300; i++) {
    yield `gauge ${i} read ${(i * 7919) % 1000} units; `;
  }
  // Then the model loses the thread and loops.
  for (let i = 0; ; i++) {
    yield LOOP[i % LOOP.length];
  }
}

async function main() {
  const maxTokens = 4096;
  const prompt = "Field notes, day one: ";
  const plateau = new InformationPlateauCriterion(prompt, 250, 20);
  const criterion = new AnyCriterion([plateau, new MaxTokensCriterion(maxTokens)]);

  let generated = 0;
  let text = prompt;
  let delta: number | null = null;
  try {
    for (const token of mockGenerator()) {
      text += token;
      generated += 1;
      if (await criterion.shouldStop(token)) break;
    }
    delta = plateau.lastDelta();
  } finally {
    await criterion.dispose();
  }

  console.log(`generated ${generated} tokens before stopping`);
  console.log(`last checkpoint delta: ${delta} bytes`);
  console.log(`saved vs the ${maxTokens}-token cap: ${savings(maxTokens, generated).toFixed(1)}%`);
  console.log(`tail of the transcript: ...${text.slice(-60)}`);
}

main().catch((err) => {
  console.error(err);
  process.exit(1);
});
