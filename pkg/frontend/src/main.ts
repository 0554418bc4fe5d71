import { ApiClient } from "./api.js";
import { GameController } from "./controller.js";
import { BoardView } from "./view.js";
import type { OpponentMode } from "./types.js";

const api = new ApiClient("");
const controller = new GameController(api);

const boardRoot = document.getElementById("board-root")!;
const view = new BoardView(boardRoot, controller);
const messages = document.getElementById("messages")!;

function note(text: string, cls = "info"): void {
  const node = document.createElement("p");
  node.className = cls;
  node.textContent = text;
  messages.prepend(node);
  while (messages.childElementCount > 6) messages.lastElementChild?.remove();
}

controller.onChange((event) => {
  switch (event.kind) {
    case "snapshot":
      view.render();
      break;
    case "engine-moved":
      note(`engine played ${event.move}`);
      view.render();
      break;
    case "gated-rejection":
      note(event.message, "warn");
      break;
    case "stale-move":
      note(`board changed under you: ${event.message}`, "warn");
      break;
    case "error":
      note(event.message, "warn");
      break;
  }
});

async function start(): Promise<void> {
  const nInput = document.getElementById("n-input") as HTMLInputElement;
  const opponentSelect = document.getElementById("opponent-select") as HTMLSelectElement;
  const n = Number(nInput.value);
  const terms = await api.sequence(30);
  view.setTerms(terms.terms);
  await controller.newGame(n, opponentSelect.value as OpponentMode);
  note(`new game on n=${n} vs ${opponentSelect.value}`);
}

document.getElementById("new-game")!.addEventListener("click", () => {
  start().catch((err) => note(String(err), "warn"));
});

document.getElementById("what-if")!.addEventListener("click", async () => {
  const lineInput = document.getElementById("line-input") as HTMLInputElement;
  const line = lineInput.value.split(/[\s,]+/).filter(Boolean);
  try {
    const result = await controller.whatIf(line);
    if ("firstIllegalIndex" in result) {
      note(result.message, "warn");
    }
  } catch (err) {
    note(String(err), "warn");
  }
});

document.getElementById("show-rules")!.addEventListener("click", async () => {
  const info = await api.rules();
  const dialog = document.getElementById("rules-dialog") as HTMLDialogElement;
  const body = document.getElementById("rules-body")!;
  body.replaceChildren();
  for (const row of info.rules) {
    const line = document.createElement("p");
    line.innerHTML = `<code>${row.rule}</code> ${row.pattern}` +
      (row.parameter ? ` <em>[${row.parameter}]</em>` : "") +
      (row.gated ? ` <strong>(${row.gated})</strong>` : "");
    body.append(line);
  }
  const noteLine = document.createElement("p");
  noteLine.className = "warn";
  noteLine.textContent = info.correction_note;
  body.append(noteLine);
  dialog.showModal();
});

view.render();
