// End-to-end: drive the client layer and state machine against the real
// service. A seeded 3-digit guided problem is completed with the
// trace-correct digit/carry pair at every position, then a second run
// answers one position wrong on purpose to check the explanation.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TrainerApi } from "../src/api.js";
import { Trainer } from "../src/trainer.js";
import type { Challenge } from "../src/types.js";

const PORT = 18650 + Math.floor(Math.random() * 1000);
const BASE_URL = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let storeDir: string;

async function waitForHealth(api: TrainerApi, attempts = 60): Promise<void> {
  for (let i = 0; i < attempts; i += 1) {
    try {
      const health = await api.health();
      if (health.status === "ok") return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), "trainer-e2e-"));
  service = spawn(
    "python3",
    ["-m", "trachtenberg", "serve", "--port", String(PORT), "--store", storeDir],
    { stdio: "ignore" },
  );
  await waitForHealth(new TrainerApi(BASE_URL));
}, 30_000);

afterAll(() => {
  service?.kill();
  rmSync(storeDir, { recursive: true, force: true });
});

const CONFIG = {
  multipliers: [6],
  min_digits: 3,
  max_digits: 3,
  mode: "guided" as const,
  seed: 20240717,
  problem_count: 1,
};

describe("guided flow against the live service", () => {
  it("completes a seeded 3-digit problem all-correct with a 100% summary", async () => {
    const api = new TrainerApi(BASE_URL);
    const trainer = new Trainer(api);
    await trainer.start(CONFIG);

    let state = trainer.getState();
    expect(state.phase).toBe("playing");
    const challenge = state.challenge as Challenge;
    expect(challenge.multiplicand).toHaveLength(3);
    expect(state.board).toHaveLength(4);

    // the service's own trace provides the correct pair for every position
    const trace = await api.trace(challenge.multiplicand, challenge.multiplier);
    expect(trace.steps).toHaveLength(4);

    let submissions = 0;
    while (trainer.getState().phase === "playing") {
      const open = trainer.getState().challenge as Challenge;
      const step = trace.steps[open.position_index]!;
      expect(open.digit).toBe(step.digit);
      expect(open.neighbour).toBe(step.neighbour);
      expect(open.carry_in).toBe(step.carry_in);
      await trainer.submit(String(step.result_digit), String(step.carry_out));
      submissions += 1;
      expect(trainer.getState().feedback?.verdict).toBe("correct");
    }

    state = trainer.getState();
    expect(submissions).toBe(4); // k+1 submissions for k digits
    expect(state.phase).toBe("finished");
    expect(state.summary?.score).toEqual({ correct: 4, total: 4 });
    expect(state.summary?.accuracy).toBe(1);
    expect(state.summary?.per_multiplier?.["6"]?.accuracy).toBe(1);
    expect(state.board.map((c) => c.status)).toEqual(
      Array(state.board.length).fill("correct"),
    );
    expect(state.board.map((c) => c.digit).join("")).toBe(
      trace.product.padStart(state.board.length, "0"),
    );
  }, 20_000);

  it("surfaces the worked-cell explanation on a deliberate wrong answer", async () => {
    const api = new TrainerApi(BASE_URL);
    const trainer = new Trainer(api);
    await trainer.start(CONFIG); // same seed ⇒ same problem
    const challenge = trainer.getState().challenge as Challenge;
    const trace = await api.trace(challenge.multiplicand, challenge.multiplier);
    const step = trace.steps[0]!;

    const wrongDigit = (step.result_digit + 1) % 10;
    await trainer.submit(String(wrongDigit), String(step.carry_out));

    const state = trainer.getState();
    expect(state.feedback?.verdict).toBe("incorrect");
    expect(state.feedback?.expected).toEqual({
      digit: step.result_digit,
      carry: step.carry_out,
    });
    // the explanation is the service's worked-cell string, e.g. "7+0+5=(1)2"
    expect(state.feedback?.explanation).toBe(step.formula);
    expect(state.feedback?.explanation).toMatch(/^[0-9()+×-]+=/);
    expect(state.board[state.board.length - 1]?.status).toBe("corrected");
  }, 20_000);

  it("keeps identical seeds on identical first problems", async () => {
    const api = new TrainerApi(BASE_URL);
    const one = await api.createSession(CONFIG);
    const two = await api.createSession(CONFIG);
    expect(one.session_id).not.toBe(two.session_id);
    const c1 = await api.nextChallenge(one.session_id);
    const c2 = await api.nextChallenge(two.session_id);
    expect(c1).toEqual(c2);
  }, 20_000);
});
