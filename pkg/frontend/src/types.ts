// Wire types mirroring the service's JSON schemas field for field.

export type SessionConfig = {
  multipliers: number[];
  min_digits: number;
  max_digits: number;
  mode: "guided" | "answer";
  seed?: number;
  problem_count: number;
};

export type SessionCreated = {
  session_id: string;
  config: SessionConfig & { seed: number };
  problem_count: number;
};

export type Challenge = {
  kind: "challenge";
  challenge_id: string;
  problem_index: number;
  problem_count: number;
  multiplicand: string;
  multiplier: number;
  position_index: number;
  role: "rightmost" | "interior" | "leading";
  digit: number;
  neighbour: number;
  carry_in: number;
  asked: string;
};

export type Finished = {
  kind: "finished";
  summary: Summary;
};

export type NextResult = Challenge | Finished;

export type StepAnswer = { digit: number; carry: number };

export type StepResult = {
  challenge_id: string;
  problem_index: number;
  answered: StepAnswer;
  verdict: "correct" | "incorrect";
  expected: StepAnswer;
  explanation: string;
  score: { correct: number; total: number };
  finished: boolean;
};

export type Summary = {
  session_id: string;
  score: { correct: number; total: number };
  accuracy?: number;
  per_multiplier?: Record<string, { correct: number; total: number; accuracy: number }>;
  elapsed_seconds: number;
  finished: boolean;
};

export type TraceStep = {
  position_index: number;
  role: string;
  digit: number;
  neighbour: number;
  raw_value: number;
  carry_in: number;
  sum: number;
  result_digit: number;
  carry_out: number;
  formula: string;
};

export type TraceDoc = {
  multiplicand: string;
  multiplier: number;
  steps: TraceStep[];
  extra_leading_digit: number | null;
  product: string;
};
