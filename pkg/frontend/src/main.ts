// Page wiring: DOM lookups, event hookup, and a single render pass
// driven by controller change events.

import { GameApi } from "./api.js";
import { GameController } from "./app.js";
import { moveLabel, sideName, turnText } from "./game.js";
import { type BoardHandles, initBoard, updateBoard } from "./render.js";

function byId<T extends Element>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as unknown as T;
}

const params = new URLSearchParams(window.location.search);
const api = new GameApi(params.get("api") ?? "");
const controller = new GameController(api);

const svg = byId<SVGSVGElement>("board");
const statusEl = byId<HTMLElement>("status");
const noticeEl = byId<HTMLElement>("notice");
const bannerEl = byId<HTMLElement>("banner");
const bannerText = byId<HTMLElement>("banner-text");
const dofEl = byId<HTMLElement>("dof");
const plyEl = byId<HTMLElement>("ply");
const trajectoryEl = byId<HTMLElement>("trajectory");
const engineEl = byId<HTMLElement>("engine");
const logEl = byId<HTMLOListElement>("log");
const form = byId<HTMLFormElement>("new-game");
const sideSelect = byId<HTMLSelectElement>("side");
const policySelect = byId<HTMLSelectElement>("policy");

const handles: BoardHandles = initBoard(svg, (node) => {
  void controller.clickNode(node);
});

function renderLog(): void {
  logEl.replaceChildren();
  for (const entry of controller.log) {
    const item = document.createElement("li");
    const text = document.createElement("span");
    text.textContent = moveLabel(entry.move, entry.mover);
    const badge = document.createElement("span");
    badge.className = entry.badge.ok ? "badge ok" : "badge bad";
    badge.textContent = entry.badge.text;
    badge.title = entry.badge.detail;
    item.append(text, badge);
    logEl.appendChild(item);
  }
  logEl.scrollTop = logEl.scrollHeight;
}

function render(): void {
  const view = controller.view;
  document.body.classList.toggle("busy", controller.busy);
  noticeEl.textContent = controller.notice ?? "";
  bannerEl.hidden = controller.banner === null;
  bannerText.textContent = controller.banner ?? "";
  if (view === null) {
    statusEl.textContent = "Start a game to play.";
    return;
  }
  updateBoard(
    handles,
    view,
    controller.humanPlays,
    controller.selected,
    controller.flashed,
    controller.lastMove,
  );
  statusEl.textContent = controller.busy
    ? "Waiting for the engine"
    : turnText(view, controller.humanPlays);
  statusEl.classList.toggle("over", view.outcome !== null);
  dofEl.textContent = `${sideName(1)} ${view.dof["1"] ?? 0}, ${sideName(2)} ${view.dof["2"] ?? 0}`;
  plyEl.textContent = String(view.ply);
  const trajectory = controller.trajectory;
  if (trajectory === null) {
    trajectoryEl.textContent = "";
  } else if (trajectory.kind === "CG") {
    trajectoryEl.textContent = `CG (first repeat at ply ${trajectory.first_repeat_ply})`;
    trajectoryEl.className = "cg";
  } else {
    trajectoryEl.textContent = "DAG";
    trajectoryEl.className = "dag";
  }
  engineEl.textContent = controller.enginePolicy
    ? `${controller.enginePolicy} (seed ${controller.seed})`
    : "";
  renderLog();
}

controller.subscribe(render);

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void controller.newGame({
    human_plays: Number(sideSelect.value),
    engine: { policy: policySelect.value },
  });
});

byId<HTMLButtonElement>("retry").addEventListener("click", () => {
  void controller.refresh();
});

render();
void controller.newGame({
  human_plays: Number(sideSelect.value),
  engine: { policy: policySelect.value },
});
