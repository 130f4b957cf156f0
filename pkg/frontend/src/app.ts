// Session controller: owns the current game, selection, move log, and
// error surfaces. Talks to the service through a narrow client
// interface so tests can drive it with a stub.

import {
  ApiError,
  type AppliedMove,
  type GameCreated,
  type GameSnapshot,
  type MoveRef,
  type MoveResult,
  type NewGameOptions,
  type StateView,
  type TrajectoryView,
} from "./api.js";
import { type Badge, matrixBadge, reduceClick } from "./game.js";

export interface ServiceClient {
  createGame(options?: NewGameOptions): Promise<GameCreated>;
  playMove(gameId: string, move: MoveRef): Promise<MoveResult>;
  getGame(gameId: string): Promise<GameSnapshot>;
  getTrajectory(gameId: string): Promise<TrajectoryView>;
}

export interface LogEntry {
  mover: number;
  move: AppliedMove;
  badge: Badge;
}

function errorMessage(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

export class GameController {
  gameId: string | null = null;
  humanPlays = 1;
  enginePolicy = "";
  seed: number | null = null;
  view: StateView | null = null;
  selected: number | null = null;
  busy = false;
  log: LogEntry[] = [];
  trajectory: TrajectoryView | null = null;
  lastMove: AppliedMove | null = null;
  flashed: number[] = [];
  /** Inline rejection text (illegal move, out of turn); board state is kept. */
  notice: string | null = null;
  /** Blocking failure (server unreachable); cleared by retry(). */
  banner: string | null = null;

  private listeners: Array<() => void> = [];

  constructor(private readonly api: ServiceClient) {}

  get enginePlays(): number {
    return 3 - this.humanPlays;
  }

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private pushLog(move: AppliedMove, mover: number): void {
    this.log.push({ mover, move, badge: matrixBadge(move.matrix_check) });
  }

  private async refreshTrajectory(): Promise<void> {
    if (this.gameId === null) return;
    try {
      this.trajectory = await this.api.getTrajectory(this.gameId);
    } catch {
      // non-essential; keep the previous classification
    }
  }

  async newGame(options: NewGameOptions = {}): Promise<void> {
    this.busy = true;
    this.notice = null;
    this.banner = null;
    this.emit();
    try {
      const created = await this.api.createGame(options);
      this.gameId = created.game_id;
      this.humanPlays = created.human_plays;
      this.enginePolicy = created.engine_policy;
      this.seed = created.seed;
      this.view = created.state;
      this.selected = null;
      this.log = [];
      this.lastMove = created.engine_move;
      this.flashed = created.engine_move?.captures ?? [];
      if (created.engine_move) {
        this.pushLog(created.engine_move, this.enginePlays);
      }
      this.trajectory = null;
      await this.refreshTrajectory();
    } catch (err) {
      this.banner = errorMessage(err);
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async clickNode(node: number): Promise<void> {
    if (this.busy || this.view === null || this.gameId === null) return;
    this.notice = null;
    const result = reduceClick(this.view, this.humanPlays, this.selected, node);
    this.selected = result.selected;
    if (result.move === null) {
      this.emit();
      return;
    }
    this.busy = true;
    this.emit();
    try {
      const played = await this.api.playMove(this.gameId, result.move);
      this.view = played.state;
      this.pushLog(played.move, this.humanPlays);
      if (played.engine_move) {
        this.pushLog(played.engine_move, this.enginePlays);
      }
      this.lastMove = played.engine_move ?? played.move;
      this.flashed = [
        ...played.move.captures,
        ...(played.engine_move?.captures ?? []),
      ];
      await this.refreshTrajectory();
    } catch (err) {
      if (err instanceof ApiError && err.status >= 400) {
        this.notice = err.message;
      } else {
        this.banner = errorMessage(err);
      }
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  /** Re-pull the session snapshot, e.g. from the banner's retry button. */
  async refresh(): Promise<void> {
    if (this.gameId === null) {
      this.banner = null;
      this.emit();
      return;
    }
    this.busy = true;
    this.emit();
    try {
      const snapshot = await this.api.getGame(this.gameId);
      this.view = snapshot.state;
      this.banner = null;
      await this.refreshTrajectory();
    } catch (err) {
      this.banner = errorMessage(err);
    } finally {
      this.busy = false;
      this.emit();
    }
  }
}
