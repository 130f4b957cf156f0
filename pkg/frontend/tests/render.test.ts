// @vitest-environment happy-dom
import { describe, expect, it, vi } from "vitest";

import type { StateView } from "../src/api.js";
import { initBoard, updateBoard } from "../src/render.js";

function openingView(): StateView {
  const cells = new Array<number>(21).fill(3);
  for (let i = 9; i <= 14; i += 1) cells[i] = 2;
  for (let i = 15; i <= 20; i += 1) cells[i] = 1;
  return {
    cells,
    to_move: 1,
    ply: 0,
    legal_moves: [
      { from: 15, to: 7 },
      { from: 16, to: 7 },
      { from: 17, to: 8 },
      { from: 18, to: 8 },
      { from: 19, to: 8 },
      { from: 20, to: 5 },
    ],
    dof: { "1": 6, "2": 6 },
    outcome: null,
  };
}

function freshBoard(onClick: (node: number) => void = () => {}) {
  const svg = document.createElementNS(
    "http://www.w3.org/2000/svg",
    "svg",
  ) as SVGSVGElement;
  document.body.appendChild(svg);
  return initBoard(svg, onClick);
}

function classesOf(handles: ReturnType<typeof freshBoard>, node: number): string[] {
  return (handles.circles[node]?.getAttribute("class") ?? "").split(" ");
}

describe("board skeleton", () => {
  it("draws 36 edges, 21 nodes, and 21 labels", () => {
    const handles = freshBoard();
    expect(handles.svg.querySelectorAll("line.edge")).toHaveLength(36);
    expect(handles.svg.querySelectorAll("circle.node")).toHaveLength(21);
    expect(handles.svg.querySelectorAll("text.idx")).toHaveLength(21);
    expect(handles.svg.getAttribute("viewBox")).toBe("0 0 640 640");
  });

  it("reports the clicked node index", () => {
    const onClick = vi.fn();
    const handles = freshBoard(onClick);
    handles.circles[13]?.dispatchEvent(new MouseEvent("click"));
    expect(onClick).toHaveBeenCalledWith(13);
  });
});

describe("board state styling", () => {
  it("fills the opening position", () => {
    const handles = freshBoard();
    updateBoard(handles, openingView(), 1, null, [], null);
    expect(handles.svg.querySelectorAll("circle.red")).toHaveLength(6);
    expect(handles.svg.querySelectorAll("circle.yellow")).toHaveLength(6);
    expect(handles.svg.querySelectorAll("circle.empty")).toHaveLength(9);
  });

  it("marks sources for the human to move and destinations of the selection", () => {
    const handles = freshBoard();
    updateBoard(handles, openingView(), 1, 15, [], null);
    expect(classesOf(handles, 15)).toContain("selected");
    expect(classesOf(handles, 7)).toContain("dest");
    expect(classesOf(handles, 17)).toContain("source");
    expect(classesOf(handles, 9)).not.toContain("source");
  });

  it("marks nothing selectable on the engine's turn", () => {
    const handles = freshBoard();
    updateBoard(handles, openingView(), 2, null, [], null);
    expect(handles.svg.querySelectorAll("circle.source")).toHaveLength(0);
  });

  it("flags captured and last-move nodes", () => {
    const handles = freshBoard();
    const lastMove = {
      from: 8,
      to: 4,
      captures: [0],
      matrix_check: { domain: "Y", matrix_nnz: 24, in_D: true, exact_match: true },
    };
    updateBoard(handles, openingView(), 1, null, [0], lastMove);
    expect(classesOf(handles, 0)).toContain("captured");
    expect(classesOf(handles, 8)).toContain("last");
    expect(classesOf(handles, 4)).toContain("last");
  });
});
