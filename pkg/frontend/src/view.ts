import type { GameController } from "./controller.js";
import { boardBounds, spiralCells, visibleCellCount } from "./spiral.js";
import type { SessionView } from "./types.js";

const CELL_PX = 46;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class BoardView {
  private terms: number[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly controller: GameController,
  ) {}

  setTerms(terms: number[]): void {
    this.terms = terms;
  }

  render(): void {
    const { controller } = this;
    this.root.replaceChildren();
    const session = controller.preview?.session ?? controller.session;
    if (!session) {
      this.root.append(el("p", "hint", "Start a game to lay out the quilt."));
      return;
    }
    this.root.append(this.banner(session));
    const board = this.board(session);
    if (controller.preview) {
      const wrap = el("div", "preview-wrap");
      wrap.append(board, el("div", "preview-watermark", "preview"));
      this.root.append(wrap, this.previewControls());
    } else {
      this.root.append(board);
    }
    this.root.append(this.movePanel(), this.historyPanel(session));
  }

  private banner(session: SessionView): HTMLElement {
    const banner = el("div", "banner");
    if (session.status === "finished") {
      banner.classList.add("finished");
      banner.textContent = `${session.winner} wins after ${session.move_count} moves`;
    } else {
      banner.textContent = `${session.to_move} to move — total ${session.total}, ` +
        `monovariant ${session.monovariant.toFixed(3)}`;
    }
    if (this.controller.legal?.gated && !this.controller.preview) {
      banner.append(el("span", "gate-indicator", "gate open: only q1 ^ q5 -> q2 ^ q4 remains"));
    }
    return banner;
  }

  private board(session: SessionView): HTMLElement {
    const counts = new Map(session.counts);
    const cellCount = visibleCellCount(this.terms, session.n);
    const cells = spiralCells(cellCount);
    const bounds = boardBounds(cells);
    const board = el("div", "board");
    board.style.width = `${(bounds.maxX - bounds.minX) * CELL_PX}px`;
    board.style.height = `${(bounds.maxY - bounds.minY) * CELL_PX}px`;
    for (const cell of cells) {
      const node = el("div", "cell");
      node.style.left = `${(cell.x - bounds.minX) * CELL_PX}px`;
      // flip y: larger y is farther up in quilt coordinates
      node.style.top = `${(bounds.maxY - cell.y - cell.h) * CELL_PX}px`;
      node.style.width = `${cell.w * CELL_PX}px`;
      node.style.height = `${cell.h * CELL_PX}px`;
      const value = this.terms[cell.index - 1];
      node.append(el("span", "cell-label", `q${cell.index}=${value}`));
      const multiplicity = counts.get(cell.index) ?? 0;
      if (multiplicity > 0) {
        node.classList.add("occupied");
        node.append(el("span", "badge", `×${multiplicity}`));
      }
      board.append(node);
    }
    return board;
  }

  private movePanel(): HTMLElement {
    const panel = el("div", "panel moves");
    panel.append(el("h2", undefined, "Legal moves"));
    const moves = this.controller.offeredMoves;
    if (this.controller.preview) {
      panel.append(el("p", "hint", "Commit or discard the preview to keep playing."));
      return panel;
    }
    if (!moves.length) {
      panel.append(el("p", "hint", "No moves: the list is an FQ-legal decomposition."));
      return panel;
    }
    const list = el("ul");
    for (const option of moves) {
      const item = el("li");
      const button = el("button", option.gated ? "move gated" : "move");
      button.append(
        el("code", undefined, option.move),
        el("span", "rewrite", option.rewrite),
        el(
          "span",
          option.monovariant_delta > 0 ? "delta up" : "delta",
          option.monovariant_delta.toFixed(4),
        ),
      );
      button.addEventListener("click", () => void this.controller.selectMove(option.move));
      item.append(button);
      list.append(item);
    }
    panel.append(list);
    return panel;
  }

  private historyPanel(session: SessionView): HTMLElement {
    const panel = el("div", "panel history");
    panel.append(el("h2", undefined, "History"));
    const list = el("ol");
    session.history.forEach((move, k) => {
      const item = el("li", k % 2 === 0 ? "p1" : "p2");
      item.append(el("code", undefined, move));
      list.append(item);
    });
    panel.append(list);
    return panel;
  }

  private previewControls(): HTMLElement {
    const controls = el("div", "preview-controls");
    const deltas = this.controller.preview?.deltas ?? [];
    const table = el("table", "delta-table");
    const head = el("tr");
    head.append(el("th", undefined, "move"), el("th", undefined, "monovariant Δ"));
    table.append(head);
    this.controller.preview?.line.forEach((move, k) => {
      const row = el("tr");
      const delta = deltas[k] ?? 0;
      row.append(
        el("td", undefined, move),
        el("td", delta > 0 ? "delta up" : "delta", delta.toFixed(4)),
      );
      table.append(row);
    });
    const commit = el("button", "commit", "Commit line");
    commit.addEventListener("click", () => void this.controller.commitPreview());
    const discard = el("button", "discard", "Discard");
    discard.addEventListener("click", () => this.controller.discardPreview());
    controls.append(table, commit, discard);
    return controls;
  }
}
