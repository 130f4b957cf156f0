// Static board geometry. The engine treats the board as a bare graph;
// everything here is presentation only, but EDGES must list exactly the
// 36 playable connections so the drawing matches the rules.

export interface Point {
  x: number;
  y: number;
}

export const VIEW_SIZE = 640;

const CENTER = VIEW_SIZE / 2;
const INNER_RADIUS = 88;
const HUB_RADIUS = 176;
const RING_RADIUS = 264;

function polar(radius: number, degrees: number): Point {
  const rad = (degrees * Math.PI) / 180;
  return {
    x: Math.round((CENTER + radius * Math.cos(rad)) * 10) / 10,
    y: Math.round((CENTER - radius * Math.sin(rad)) * 10) / 10,
  };
}

function buildPositions(): Point[] {
  const pts: Point[] = [{ x: CENTER, y: CENTER }];
  // 1..4 inner square, 5..8 spoke hubs, both top/right/bottom/left
  for (const radius of [INNER_RADIUS, HUB_RADIUS]) {
    for (let k = 0; k < 4; k += 1) {
      pts.push(polar(radius, 90 - 90 * k));
    }
  }
  // 9..20 outer ring, 30 degree steps clockwise from the top
  for (let k = 0; k < 12; k += 1) {
    pts.push(polar(RING_RADIUS, 90 - 30 * k));
  }
  return pts;
}

export const NODE_POSITIONS: readonly Point[] = buildPositions();

// Undirected adjacency of the 21-node board, one pair per edge.
export const EDGES: ReadonlyArray<readonly [number, number]> = [
  [0, 1],
  [0, 2],
  [0, 3],
  [0, 4],
  [1, 2],
  [1, 4],
  [1, 5],
  [2, 3],
  [2, 6],
  [3, 4],
  [3, 7],
  [4, 8],
  [5, 9],
  [5, 10],
  [5, 20],
  [6, 11],
  [6, 12],
  [6, 13],
  [7, 14],
  [7, 15],
  [7, 16],
  [8, 17],
  [8, 18],
  [8, 19],
  [9, 10],
  [9, 20],
  [10, 11],
  [11, 12],
  [12, 13],
  [13, 14],
  [14, 15],
  [15, 16],
  [16, 17],
  [17, 18],
  [18, 19],
  [19, 20],
];

export const NODE_COUNT = 21;
export const NODE_RADIUS = 17;
