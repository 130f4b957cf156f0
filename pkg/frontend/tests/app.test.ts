import { describe, expect, it, vi } from "vitest";

import {
  ApiError,
  type AppliedMove,
  type GameCreated,
  type MoveResult,
  type StateView,
  type TrajectoryView,
} from "../src/api.js";
import { GameController, type ServiceClient } from "../src/app.js";

function view(overrides: Partial<StateView> = {}): StateView {
  const cells = new Array<number>(21).fill(3);
  for (let i = 9; i <= 14; i += 1) cells[i] = 2;
  for (let i = 15; i <= 20; i += 1) cells[i] = 1;
  return {
    cells,
    to_move: 1,
    ply: 0,
    legal_moves: [
      { from: 15, to: 7 },
      { from: 20, to: 5 },
    ],
    dof: { "1": 6, "2": 6 },
    outcome: null,
    ...overrides,
  };
}

function applied(from: number, to: number, captures: number[] = []): AppliedMove {
  return {
    from,
    to,
    captures,
    matrix_check: { domain: "Y", matrix_nnz: 23, in_D: true, exact_match: true },
  };
}

function created(overrides: Partial<GameCreated> = {}): GameCreated {
  return {
    game_id: "g1",
    board: { name: "xigua", n: 21, edges: [] },
    human_plays: 1,
    engine_policy: "minmax:2+rt",
    seed: 7,
    state: view(),
    engine_move: null,
    ...overrides,
  };
}

const dagTrajectory: TrajectoryView = {
  game_id: "g1",
  kind: "DAG",
  first_repeat_ply: null,
};

function client(overrides: Partial<ServiceClient> = {}): ServiceClient {
  return {
    createGame: vi.fn(async () => created()),
    playMove: vi.fn(async (): Promise<MoveResult> => {
      throw new Error("unexpected playMove");
    }),
    getGame: vi.fn(async () => {
      throw new Error("unexpected getGame");
    }),
    getTrajectory: vi.fn(async () => dagTrajectory),
    ...overrides,
  };
}

describe("starting a game", () => {
  it("loads the opening state and clears the log", async () => {
    const controller = new GameController(client());
    await controller.newGame({ human_plays: 1 });
    expect(controller.gameId).toBe("g1");
    expect(controller.humanPlays).toBe(1);
    expect(controller.enginePlays).toBe(2);
    expect(controller.view?.ply).toBe(0);
    expect(controller.log).toEqual([]);
    expect(controller.busy).toBe(false);
    expect(controller.trajectory?.kind).toBe("DAG");
  });

  it("records the engine's opening move when the human is yellow", async () => {
    const stub = client({
      createGame: vi.fn(async () =>
        created({
          human_plays: 2,
          state: view({ to_move: 2, ply: 1 }),
          engine_move: applied(15, 7),
        }),
      ),
    });
    const controller = new GameController(stub);
    await controller.newGame({ human_plays: 2 });
    expect(controller.log).toHaveLength(1);
    expect(controller.log[0]?.mover).toBe(1);
    expect(controller.log[0]?.badge.ok).toBe(true);
    expect(controller.lastMove?.from).toBe(15);
  });

  it("shows a banner when the service is unreachable", async () => {
    const stub = client({
      createGame: vi.fn(async () => {
        throw new ApiError(0, { error: "cannot reach server: down" });
      }),
    });
    const controller = new GameController(stub);
    await controller.newGame();
    expect(controller.banner).toContain("cannot reach server");
    expect(controller.view).toBeNull();
  });
});

describe("playing moves", () => {
  async function started(overrides: Partial<ServiceClient> = {}) {
    const stub = client(overrides);
    const controller = new GameController(stub);
    await controller.newGame({ human_plays: 1 });
    return { controller, stub };
  }

  it("submits on source then destination and logs both sides", async () => {
    const reply: MoveResult = {
      game_id: "g1",
      move: applied(15, 7),
      engine_move: applied(9, 5, [7]),
      state: view({ ply: 2 }),
    };
    const playMove = vi.fn(async () => reply);
    const { controller } = await started({ playMove });

    await controller.clickNode(15);
    expect(controller.selected).toBe(15);
    await controller.clickNode(7);

    expect(playMove).toHaveBeenCalledWith("g1", { from: 15, to: 7 });
    expect(controller.selected).toBeNull();
    expect(controller.log.map((e) => e.mover)).toEqual([1, 2]);
    expect(controller.flashed).toEqual([7]);
    expect(controller.lastMove?.from).toBe(9);
    expect(controller.view?.ply).toBe(2);
  });

  it("refreshes the trajectory after each exchange", async () => {
    const getTrajectory = vi.fn(async (): Promise<TrajectoryView> => ({
      game_id: "g1",
      kind: "CG",
      first_repeat_ply: 11,
    }));
    const { controller } = await started({
      playMove: vi.fn(async () => ({
        game_id: "g1",
        move: applied(15, 7),
        engine_move: null,
        state: view({ ply: 1, to_move: 2 }),
      })),
      getTrajectory,
    });
    await controller.clickNode(15);
    await controller.clickNode(7);
    expect(getTrajectory).toHaveBeenCalledTimes(2);
    expect(controller.trajectory?.kind).toBe("CG");
    expect(controller.trajectory?.first_repeat_ply).toBe(11);
  });

  it("keeps the board and shows an inline notice on a server rejection", async () => {
    const { controller } = await started({
      playMove: vi.fn(async () => {
        throw new ApiError(422, { error: "no legal slide from 15 to 7" });
      }),
    });
    const before = controller.view;
    await controller.clickNode(15);
    await controller.clickNode(7);
    expect(controller.notice).toBe("no legal slide from 15 to 7");
    expect(controller.banner).toBeNull();
    expect(controller.view).toBe(before);
    expect(controller.log).toEqual([]);
    expect(controller.busy).toBe(false);
  });

  it("notices a finished game conflict", async () => {
    const { controller } = await started({
      playMove: vi.fn(async () => {
        throw new ApiError(409, {
          error: "game is over",
          outcome: { kind: "draw", winner: null, reason: "repetition" },
        });
      }),
    });
    await controller.clickNode(15);
    await controller.clickNode(7);
    expect(controller.notice).toBe("game is over");
  });

  it("escalates a network failure to the banner", async () => {
    const { controller } = await started({
      playMove: vi.fn(async () => {
        throw new ApiError(0, { error: "cannot reach server: refused" });
      }),
    });
    await controller.clickNode(15);
    await controller.clickNode(7);
    expect(controller.notice).toBeNull();
    expect(controller.banner).toContain("cannot reach server");
  });

  it("ignores clicks while a move is in flight", async () => {
    let release: (value: MoveResult) => void = () => {};
    const pending = new Promise<MoveResult>((resolve) => {
      release = resolve;
    });
    const playMove = vi.fn(() => pending);
    const { controller } = await started({ playMove });

    await controller.clickNode(15);
    const flight = controller.clickNode(7);
    expect(controller.busy).toBe(true);
    await controller.clickNode(20);
    expect(playMove).toHaveBeenCalledTimes(1);

    release({
      game_id: "g1",
      move: applied(15, 7),
      engine_move: null,
      state: view({ ply: 1, to_move: 2 }),
    });
    await flight;
    expect(controller.busy).toBe(false);
  });

  it("swallows trajectory fetch failures", async () => {
    const { controller } = await started({
      playMove: vi.fn(async () => ({
        game_id: "g1",
        move: applied(15, 7),
        engine_move: null,
        state: view({ ply: 1, to_move: 2 }),
      })),
      getTrajectory: vi.fn(async () => {
        throw new ApiError(0, { error: "cannot reach server" });
      }),
    });
    await controller.clickNode(15);
    await controller.clickNode(7);
    expect(controller.banner).toBeNull();
    expect(controller.view?.ply).toBe(1);
  });
});

describe("recovery", () => {
  it("re-pulls the snapshot and clears the banner", async () => {
    const getGame = vi.fn(async () => ({
      game_id: "g1",
      board: { name: "xigua", n: 21, edges: [] as [number, number][] },
      human_plays: 1,
      engine_policy: "minmax:2+rt",
      seed: 7,
      moves_played: 4,
      state: view({ ply: 4 }),
    }));
    const controller = new GameController(client({ getGame }));
    await controller.newGame();
    controller.banner = "cannot reach server: blip";
    await controller.refresh();
    expect(getGame).toHaveBeenCalledWith("g1");
    expect(controller.banner).toBeNull();
    expect(controller.view?.ply).toBe(4);
  });

  it("notifies subscribers on every transition", async () => {
    const controller = new GameController(client());
    const listener = vi.fn();
    controller.subscribe(listener);
    await controller.newGame();
    expect(listener.mock.calls.length).toBeGreaterThanOrEqual(2);
  });
});
