/** Wire types mirrored from the service API (docs/service-api.md). */

export type Player = "Player1" | "Player2";

export interface SessionView {
  id: string;
  n: number;
  seed: number;
  state: string;
  counts: [number, number][];
  total: number;
  monovariant: number;
  history: string[];
  move_count: number;
  to_move: Player;
  status: "active" | "finished";
  winner: Player | null;
}

export interface MoveOption {
  move: string;
  rewrite: string;
  monovariant_delta: number;
  gated: boolean;
}

export interface MovesListing {
  moves: MoveOption[];
  gated: boolean;
  turn: number;
}

export interface EngineReply {
  move: string;
  session: SessionView;
}

export interface RuleRow {
  rule: string;
  pattern: string;
  parameter: string | null;
  gated?: string;
  note?: string;
}

export interface RulesInfo {
  rules: RuleRow[];
  correction_note: string;
}

export interface SequenceInfo {
  max_index: number;
  terms: number[];
}

export type Strategy = "random" | "greedy-monovariant" | "optimal";
export type OpponentMode = "hotseat" | Strategy;

export interface ApiError {
  status: number;
  error: string;
  message: string;
  reason?: string;
  turn?: number;
}
