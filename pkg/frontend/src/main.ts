// DOM wiring for the trainer. All practice logic lives in trainer.ts;
// this file only reads form values, renders ViewState and routes keys.

import { TrainerApi } from "./api.js";
import { Trainer, type ViewState } from "./trainer.js";

const DEFAULT_BASE_URL = `${location.protocol}//${location.hostname}:8080`;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class TrainerPage {
  private trainer!: Trainer;

  private configForm = el<HTMLFormElement>("config-form");
  private baseUrlInput = el<HTMLInputElement>("base-url");
  private seedInput = el<HTMLInputElement>("seed");
  private minDigitsInput = el<HTMLInputElement>("min-digits");
  private maxDigitsInput = el<HTMLInputElement>("max-digits");
  private countInput = el<HTMLInputElement>("problem-count");
  private formErrorEl = el<HTMLElement>("form-error");

  private practiceEl = el<HTMLElement>("practice");
  private problemLabel = el<HTMLElement>("problem-label");
  private multiplicandRowEl = el<HTMLElement>("multiplicand-row");
  private boardRowEl = el<HTMLElement>("board-row");
  private carryInEl = el<HTMLElement>("carry-in");
  private digitInput = el<HTMLInputElement>("digit-entry");
  private carryInput = el<HTMLInputElement>("carry-entry");
  private submitBtn = el<HTMLButtonElement>("submit-step");
  private feedbackEl = el<HTMLElement>("feedback");
  private scoreEl = el<HTMLElement>("score");

  private summaryEl = el<HTMLElement>("summary");
  private errorBanner = el<HTMLElement>("error-banner");
  private errorText = el<HTMLElement>("error-text");
  private retryBtn = el<HTMLButtonElement>("retry");

  start(): void {
    this.configForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.startPractice();
    });
    this.retryBtn.addEventListener("click", () => void this.trainer?.retry());
    this.submitBtn.addEventListener("click", () => void this.submitStep());
    this.digitInput.addEventListener("keydown", (event) => {
      if (event.key === "Enter") {
        event.preventDefault();
        this.carryInput.focus();
        this.carryInput.select();
      }
    });
    this.carryInput.addEventListener("keydown", (event) => {
      if (event.key === "Enter") {
        event.preventDefault();
        void this.submitStep();
      }
    });
  }

  private selectedMultipliers(): number[] {
    return Array.from(
      this.configForm.querySelectorAll<HTMLInputElement>("input[name=multiplier]:checked"),
      (box) => Number(box.value),
    );
  }

  private async startPractice(): Promise<void> {
    const api = new TrainerApi(this.baseUrlInput.value.trim() || DEFAULT_BASE_URL);
    this.trainer = new Trainer(api);
    this.trainer.onChange((state) => this.render(state));
    const seedText = this.seedInput.value.trim();
    await this.trainer.start({
      multipliers: this.selectedMultipliers(),
      min_digits: Number(this.minDigitsInput.value),
      max_digits: Number(this.maxDigitsInput.value),
      mode: "guided",
      problem_count: Number(this.countInput.value),
      ...(seedText === "" ? {} : { seed: Number(seedText) }),
    });
  }

  private async submitStep(): Promise<void> {
    await this.trainer.submit(this.digitInput.value, this.carryInput.value);
    const state = this.trainer.getState();
    if (state.phase === "playing" && state.formError === null) {
      this.digitInput.value = "";
      this.carryInput.value = "";
      this.digitInput.focus();
    }
  }

  private render(state: ViewState): void {
    this.formErrorEl.textContent = state.formError ?? "";
    this.errorBanner.hidden = state.error === null;
    this.errorText.textContent = state.error ?? "";

    const playing = state.phase === "playing" || state.phase === "submitting";
    this.practiceEl.hidden = !playing && state.phase !== "finished";
    this.summaryEl.hidden = state.phase !== "finished";

    if (state.challenge) {
      const c = state.challenge;
      this.problemLabel.textContent =
        `problem ${c.problem_index + 1}/${c.problem_count}: ${c.multiplicand} × ${c.multiplier}`;
      this.carryInEl.textContent =
        `digit ${c.digit}, neighbour ${c.neighbour}, carry in ${c.carry_in}`;
    }

    this.multiplicandRowEl.replaceChildren(
      ...state.multiplicandRow.map((digit, index) => {
        const cell = document.createElement("span");
        cell.className = "cell";
        if (index === state.highlightDigit) cell.classList.add("current");
        if (index === state.highlightNeighbour) cell.classList.add("neighbour");
        cell.textContent = String(digit);
        return cell;
      }),
    );

    this.boardRowEl.replaceChildren(
      ...state.board.map((cell) => {
        const node = document.createElement("span");
        node.className = `cell ${cell.status}`;
        node.textContent = cell.digit === null ? "·" : String(cell.digit);
        return node;
      }),
    );

    if (state.feedback) {
      const f = state.feedback;
      this.feedbackEl.className = f.verdict;
      this.feedbackEl.textContent =
        f.verdict === "correct"
          ? `✓ ${f.explanation}`
          : `✗ expected digit ${f.expected.digit}, carry ${f.expected.carry} — ${f.explanation}`;
    } else {
      this.feedbackEl.textContent = "";
      this.feedbackEl.className = "";
    }

    this.scoreEl.textContent = `score ${state.score.correct}/${state.score.total}`;

    if (state.summary) {
      const s = state.summary;
      const lines = [
        `score ${s.score.correct}/${s.score.total}` +
          (s.accuracy !== undefined ? ` (${Math.round(s.accuracy * 100)}%)` : ""),
      ];
      for (const [m, stats] of Object.entries(s.per_multiplier ?? {})) {
        lines.push(`×${m}: ${stats.correct}/${stats.total} (${Math.round(stats.accuracy * 100)}%)`);
      }
      this.summaryEl.textContent = lines.join("\n");
    }

    if (playing && state.phase === "playing") this.digitInput.focus();
  }
}

new TrainerPage().start();
