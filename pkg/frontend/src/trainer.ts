// The trainer's state machine, kept free of DOM so it can be driven
// directly in tests. Every verdict, expected value and explanation comes
// from the service; this module only tracks view state.

import { ApiError, TrainerApi } from "./api.js";
import type { Challenge, SessionConfig, StepResult, Summary } from "./types.js";

export type CellStatus = "pending" | "correct" | "corrected";

export type BoardCell = {
  digit: number | null; // the settled product digit, once answered
  status: CellStatus;
};

export type Feedback = {
  verdict: "correct" | "incorrect";
  explanation: string;
  expected: { digit: number; carry: number };
};

export type Phase = "config" | "starting" | "playing" | "submitting" | "finished" | "error";

export type ViewState = {
  phase: Phase;
  sessionId: string | null;
  challenge: Challenge | null;
  /** product cells, most significant first; grows by one if a final carry appears */
  board: BoardCell[];
  /** extended multiplicand row: a leading 0 cell plus the digits */
  multiplicandRow: number[];
  /** indices into multiplicandRow to highlight for the current position */
  highlightDigit: number | null;
  highlightNeighbour: number | null;
  feedback: Feedback | null;
  score: { correct: number; total: number };
  summary: Summary | null;
  /** blocking banner text; retry() re-runs the failed call */
  error: string | null;
  formError: string | null;
};

function freshState(): ViewState {
  return {
    phase: "config",
    sessionId: null,
    challenge: null,
    board: [],
    multiplicandRow: [],
    highlightDigit: null,
    highlightNeighbour: null,
    feedback: null,
    score: { correct: 0, total: 0 },
    summary: null,
    error: null,
    formError: null,
  };
}

export function validateConfigForm(config: SessionConfig): string | null {
  if (config.multipliers.length === 0) return "pick at least one multiplier";
  if (!Number.isInteger(config.min_digits) || !Number.isInteger(config.max_digits))
    return "digit bounds must be whole numbers";
  if (config.min_digits < 1 || config.max_digits > 12 || config.min_digits > config.max_digits)
    return "digit bounds must satisfy 1 ≤ min ≤ max ≤ 12";
  if (!Number.isInteger(config.problem_count) || config.problem_count < 1)
    return "problem count must be at least 1";
  if (config.seed !== undefined && (!Number.isInteger(config.seed) || config.seed < 0))
    return "seed must be a nonnegative integer";
  return null;
}

export function parseEntry(digitText: string, carryText: string):
  | { ok: true; digit: number; carry: number }
  | { ok: false; message: string } {
  if (digitText.trim() === "") return { ok: false, message: "enter the result digit" };
  if (carryText.trim() === "") return { ok: false, message: "enter the carry (0 if none)" };
  const digit = Number(digitText);
  const carry = Number(carryText);
  if (!Number.isInteger(digit) || digit < 0 || digit > 9)
    return { ok: false, message: "digit must be 0–9" };
  if (!Number.isInteger(carry) || carry < 0 || carry > 2)
    return { ok: false, message: "carry must be 0, 1 or 2" };
  return { ok: true, digit, carry };
}

export class Trainer {
  private state: ViewState = freshState();
  private pendingRetry: (() => Promise<void>) | null = null;
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(private api: TrainerApi) {}

  onChange(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }

  getState(): ViewState {
    return this.state;
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Validate the form and start a session; invalid forms never hit the network. */
  async start(config: SessionConfig): Promise<void> {
    const formError = validateConfigForm(config);
    if (formError) {
      this.update({ formError });
      return;
    }
    this.update({ ...freshState(), phase: "starting" });
    try {
      const created = await this.api.createSession(config);
      this.update({ sessionId: created.session_id });
      await this.advance();
    } catch (error) {
      this.blockOn(error, () => this.start(config));
    }
  }

  /** Submit the entered digit and carry for the open challenge. */
  async submit(digitText: string, carryText: string): Promise<void> {
    const { challenge, sessionId } = this.state;
    if (!challenge || !sessionId || this.state.phase !== "playing") return;
    const entry = parseEntry(digitText, carryText);
    if (!entry.ok) {
      this.update({ formError: entry.message });
      return;
    }
    this.update({ phase: "submitting", formError: null });
    try {
      const result = await this.api.respond(sessionId, challenge.challenge_id, {
        digit: entry.digit,
        carry: entry.carry,
      });
      this.applyResult(challenge, result);
      await this.advance();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // the answer already landed (e.g. a retried request); resynchronize
        await this.resync();
        return;
      }
      if (error instanceof ApiError && error.status === 400) {
        this.update({ phase: "playing", formError: error.message });
        return;
      }
      this.blockOn(error, () => this.submit(digitText, carryText));
    }
  }

  /** Re-run the call that hit a network failure. */
  async retry(): Promise<void> {
    const pending = this.pendingRetry;
    this.pendingRetry = null;
    if (this.state.challenge && this.state.sessionId) {
      this.update({ error: null, phase: "playing" });
    } else {
      this.update({ error: null });
    }
    if (pending) await pending();
  }

  private blockOn(error: unknown, again: () => Promise<void>): void {
    this.pendingRetry = again;
    const message = error instanceof Error ? error.message : String(error);
    this.update({ phase: "error", error: `service unreachable: ${message}` });
  }

  private applyResult(challenge: Challenge, result: StepResult): void {
    const board = [...this.state.board];
    const cellIndex = board.length - 1 - challenge.position_index;
    const status: CellStatus = result.verdict === "correct" ? "correct" : "corrected";
    board[cellIndex] = { digit: result.expected.digit, status };
    if (challenge.role === "leading" && result.expected.carry > 0) {
      board.unshift({ digit: result.expected.carry, status });
    }
    this.update({
      board,
      score: result.score,
      feedback: {
        verdict: result.verdict,
        explanation: result.explanation,
        expected: result.expected,
      },
    });
  }

  private async advance(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    const next = await this.api.nextChallenge(sessionId);
    if (next.kind === "finished") {
      const summary = await this.api.summary(sessionId);
      this.update({
        phase: "finished",
        challenge: null,
        highlightDigit: null,
        highlightNeighbour: null,
        summary,
      });
      return;
    }
    const startingProblem =
      this.state.challenge === null ||
      this.state.challenge.problem_index !== next.problem_index;
    const digits = next.multiplicand.split("").map(Number);
    const row = startingProblem ? [0, ...digits] : this.state.multiplicandRow;
    const board = startingProblem
      ? Array.from({ length: digits.length + 1 }, (): BoardCell => ({
          digit: null,
          status: "pending",
        }))
      : this.state.board;
    // display row has the prepended zero at index 0; position 0 is rightmost
    const digitIndex = row.length - 1 - next.position_index;
    this.update({
      phase: "playing",
      challenge: next,
      board,
      multiplicandRow: row,
      highlightDigit: digitIndex,
      highlightNeighbour: next.position_index > 0 ? digitIndex + 1 : null,
      feedback: startingProblem ? null : this.state.feedback,
      formError: null,
    });
  }

  /** After an ambiguous failure, rebuild score and cursor from the service. */
  private async resync(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    try {
      const summary = await this.api.summary(sessionId);
      const challenge = this.state.challenge;
      if (challenge) {
        const board = [...this.state.board];
        const cellIndex = board.length - 1 - challenge.position_index;
        const cell = board[cellIndex];
        if (cell && cell.status === "pending") {
          const wasCorrect = summary.score.correct > this.state.score.correct;
          board[cellIndex] = {
            digit: null,
            status: wasCorrect ? "correct" : "corrected",
          };
        }
        this.update({ board, score: summary.score });
      }
      await this.advance();
    } catch (error) {
      this.blockOn(error, () => this.resync());
    }
  }
}
