import { ApiClient, ServiceRequestError } from "./api.js";
import type {
  MoveOption,
  MovesListing,
  OpponentMode,
  SessionView,
  Strategy,
} from "./types.js";

export interface PreviewState {
  line: string[];
  /** Snapshot after replaying history + line on a scratch session. */
  session: SessionView;
  /** Monovariant change per previewed move, in line order. */
  deltas: number[];
}

export interface PreviewFailure {
  line: string[];
  firstIllegalIndex: number;
  message: string;
}

export type ControllerEvent =
  | { kind: "snapshot" }
  | { kind: "engine-moved"; move: string }
  | { kind: "gated-rejection"; message: string }
  | { kind: "stale-move"; message: string }
  | { kind: "error"; message: string };

type Listener = (event: ControllerEvent) => void;

/**
 * Session driver for the board UI.
 *
 * Owns no rule knowledge: every playable move comes from the server's legal
 * list, and the board renders only confirmed snapshots (no optimistic
 * updates).  What-if lines are validated by replaying them on a scratch
 * session, never against local logic.
 */
export class GameController {
  session: SessionView | null = null;
  legal: MovesListing | null = null;
  preview: PreviewState | null = null;
  opponent: OpponentMode = "hotseat";

  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(event: ControllerEvent): void {
    for (const listener of this.listeners) listener(event);
  }

  get offeredMoves(): MoveOption[] {
    return this.legal?.moves ?? [];
  }

  async newGame(n: number, opponent: OpponentMode, seed?: number): Promise<void> {
    this.opponent = opponent;
    this.preview = null;
    this.session = await this.api.createSession(n, seed);
    await this.refreshMoves();
    this.emit({ kind: "snapshot" });
  }

  async refresh(): Promise<void> {
    if (!this.session) return;
    this.session = await this.api.getSession(this.session.id);
    await this.refreshMoves();
    this.emit({ kind: "snapshot" });
  }

  private async refreshMoves(): Promise<void> {
    if (!this.session) return;
    this.legal =
      this.session.status === "active"
        ? await this.api.listMoves(this.session.id)
        : { moves: [], gated: false, turn: this.session.move_count };
  }

  /** Play one move picked from the offered list; never a constructed one. */
  async selectMove(moveText: string): Promise<void> {
    if (!this.session || !this.legal) throw new Error("no active game");
    if (!this.legal.moves.some((m) => m.move === moveText)) {
      throw new Error(`move ${moveText} is not in the offered list`);
    }
    try {
      this.session = await this.api.playMove(this.session.id, moveText, this.legal.turn);
    } catch (err) {
      if (err instanceof ServiceRequestError) {
        await this.refresh();
        if (err.reason === "gated") {
          this.emit({
            kind: "gated-rejection",
            message: "The q1 ^ q5 swap is only legal when no other move exists.",
          });
        } else if (err.error === "stale-turn") {
          this.emit({ kind: "stale-move", message: err.message });
        } else {
          this.emit({ kind: "error", message: err.message });
        }
      } else {
        // network failure: board stays on the last confirmed snapshot
        this.emit({ kind: "error", message: `request failed, try again: ${String(err)}` });
      }
      return;
    }
    await this.refreshMoves();
    this.emit({ kind: "snapshot" });
    await this.maybeEngineReply();
  }

  private async maybeEngineReply(): Promise<void> {
    if (this.opponent === "hotseat") return;
    if (!this.session || this.session.status !== "active") return;
    const reply = await this.api.engineMove(this.session.id, this.opponent as Strategy);
    this.session = reply.session;
    await this.refreshMoves();
    this.emit({ kind: "engine-moved", move: reply.move });
    this.emit({ kind: "snapshot" });
  }

  /**
   * Preview a line of moves without touching the live session: replay the
   * current history plus the line on a scratch session.  Rejected lines
   * report the index of the first illegal move.
   */
  async whatIf(line: string[]): Promise<PreviewState | PreviewFailure> {
    if (!this.session) throw new Error("no active game");
    const scratch = await this.api.createSession(this.session.n, this.session.seed);
    for (const played of this.session.history) {
      await this.api.playMove(scratch.id, played);
    }
    let view = await this.api.getSession(scratch.id);
    const deltas: number[] = [];
    for (let k = 0; k < line.length; k++) {
      const moveText = line[k]!;
      const listing = await this.api.listMoves(scratch.id);
      const option = listing.moves.find((m) => m.move === moveText);
      if (!option) {
        return {
          line,
          firstIllegalIndex: k,
          message: `move ${k + 1} (${moveText}) is not legal at ${view.state}`,
        };
      }
      deltas.push(option.monovariant_delta);
      view = await this.api.playMove(scratch.id, moveText);
    }
    this.preview = { line, session: view, deltas };
    this.emit({ kind: "snapshot" });
    return this.preview;
  }

  discardPreview(): void {
    this.preview = null;
    this.emit({ kind: "snapshot" });
  }

  /** Commit the previewed line to the live session, move by move. */
  async commitPreview(): Promise<void> {
    const preview = this.preview;
    if (!preview) return;
    this.preview = null;
    for (const moveText of preview.line) {
      if (!this.session || this.session.status !== "active") break;
      await this.refreshMoves();
      if (!this.legal!.moves.some((m) => m.move === moveText)) {
        this.emit({
          kind: "error",
          message: `preview no longer valid: ${moveText} is not legal`,
        });
        await this.refresh();
        return;
      }
      this.session = await this.api.playMove(this.session.id, moveText, this.legal!.turn);
    }
    await this.refreshMoves();
    this.emit({ kind: "snapshot" });
    await this.maybeEngineReply();
  }

  /** Replay the history server-side and confirm it reproduces the board. */
  async verifyRoundTrip(): Promise<boolean> {
    if (!this.session) return true;
    const scratch = await this.api.createSession(this.session.n, this.session.seed);
    let view = scratch;
    for (const played of this.session.history) {
      view = await this.api.playMove(scratch.id, played);
    }
    return view.state === this.session.state && view.total === this.session.total;
  }
}
