// Typed fetch client for the game service. The UI never decides
// legality itself; every rule question is answered by these endpoints.

export interface MoveRef {
  from: number;
  to: number;
}

export interface MatrixCheck {
  domain: string;
  matrix_nnz: number;
  in_D: boolean;
  exact_match: boolean;
}

export interface AppliedMove extends MoveRef {
  captures: number[];
  matrix_check: MatrixCheck;
}

export interface OutcomeView {
  kind: "win" | "draw";
  winner: number | null;
  reason: string;
}

export interface StateView {
  cells: number[];
  to_move: number;
  ply: number;
  legal_moves: MoveRef[];
  dof: { [player: string]: number };
  outcome: OutcomeView | null;
}

export interface BoardView {
  name: string;
  n: number;
  edges: [number, number][];
}

export interface GameCreated {
  game_id: string;
  board: BoardView;
  human_plays: number;
  engine_policy: string;
  seed: number;
  state: StateView;
  engine_move: AppliedMove | null;
}

export interface MoveResult {
  game_id: string;
  move: AppliedMove;
  engine_move: AppliedMove | null;
  state: StateView;
}

export interface GameSnapshot {
  game_id: string;
  board: BoardView;
  human_plays: number;
  engine_policy: string;
  seed: number;
  moves_played: number;
  state: StateView;
}

export interface TrajectoryView {
  game_id: string;
  kind: "DAG" | "CG";
  first_repeat_ply: number | null;
}

export interface NewGameOptions {
  human_plays?: number;
  to_move?: number;
  placement?: { [node: string]: number };
  rules?: { [option: string]: number | boolean };
  engine?: { policy?: string; seed?: number };
  auto_reply?: boolean;
}

interface ErrorDetail {
  error?: string;
  field?: string;
  outcome?: OutcomeView;
}

export class ApiError extends Error {
  readonly status: number;
  readonly detail: ErrorDetail;

  constructor(status: number, detail: ErrorDetail) {
    super(describeDetail(status, detail));
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }
}

function describeDetail(status: number, detail: ErrorDetail): string {
  const text = detail.error ?? `request failed with status ${status}`;
  return detail.field ? `${detail.field}: ${text}` : text;
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, { error: `cannot reach server: ${String(err)}` });
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const raw = (body as { detail?: unknown } | null)?.detail;
    const detail: ErrorDetail =
      raw && typeof raw === "object"
        ? (raw as ErrorDetail)
        : { error: typeof raw === "string" ? raw : `status ${response.status}` };
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

function post<T>(url: string, payload: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class GameApi {
  constructor(readonly baseUrl: string = "") {}

  createGame(options: NewGameOptions = {}): Promise<GameCreated> {
    return post<GameCreated>(`${this.baseUrl}/games`, options);
  }

  playMove(gameId: string, move: MoveRef): Promise<MoveResult> {
    return post<MoveResult>(`${this.baseUrl}/games/${gameId}/moves`, {
      from: move.from,
      to: move.to,
    });
  }

  getGame(gameId: string): Promise<GameSnapshot> {
    return request<GameSnapshot>(`${this.baseUrl}/games/${gameId}`);
  }

  getTrajectory(gameId: string): Promise<TrajectoryView> {
    return request<TrajectoryView>(`${this.baseUrl}/games/${gameId}/trajectory`);
  }
}
