// SVG board rendering. Builds the fixed skeleton once, then restyles
// nodes from the latest server state on every update.

import type { StateView } from "./api.js";
import type { AppliedMove } from "./api.js";
import { cellKind, destinationsFor, movableSources } from "./game.js";
import { EDGES, NODE_POSITIONS, NODE_RADIUS, VIEW_SIZE } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardHandles {
  svg: SVGSVGElement;
  circles: SVGCircleElement[];
}

export function initBoard(
  svg: SVGSVGElement,
  onClick: (node: number) => void,
): BoardHandles {
  svg.setAttribute("viewBox", `0 0 ${VIEW_SIZE} ${VIEW_SIZE}`);
  for (const [a, b] of EDGES) {
    const pa = NODE_POSITIONS[a];
    const pb = NODE_POSITIONS[b];
    if (!pa || !pb) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "edge");
    line.setAttribute("x1", String(pa.x));
    line.setAttribute("y1", String(pa.y));
    line.setAttribute("x2", String(pb.x));
    line.setAttribute("y2", String(pb.y));
    svg.appendChild(line);
  }
  const circles = NODE_POSITIONS.map((p, i) => {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("class", "node empty");
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", String(NODE_RADIUS));
    circle.addEventListener("click", () => onClick(i));
    svg.appendChild(circle);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("class", "idx");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y + NODE_RADIUS + 13));
    label.textContent = String(i);
    svg.appendChild(label);
    return circle;
  });
  return { svg, circles };
}

export function updateBoard(
  handles: BoardHandles,
  view: StateView,
  humanPlays: number,
  selected: number | null,
  flashed: number[],
  lastMove: AppliedMove | null,
): void {
  const humanTurn = view.outcome === null && view.to_move === humanPlays;
  const sources = new Set(humanTurn ? movableSources(view) : []);
  const dests = new Set(
    humanTurn && selected !== null ? destinationsFor(view, selected) : [],
  );
  handles.circles.forEach((circle, i) => {
    const classes = ["node", cellKind(view.cells[i] ?? 0)];
    if (i === selected) classes.push("selected");
    if (dests.has(i)) classes.push("dest");
    else if (sources.has(i)) classes.push("source");
    if (flashed.includes(i)) classes.push("captured");
    if (lastMove !== null && (i === lastMove.from || i === lastMove.to)) {
      classes.push("last");
    }
    circle.setAttribute("class", classes.join(" "));
  });
}
