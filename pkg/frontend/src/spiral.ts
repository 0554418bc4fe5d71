/**
 * Log-cabin spiral board layout.
 *
 * Cell 1 is a unit square; each later cell is a unit-thickness strip laid
 * against the current bounding box, cycling south, west, north, east. With
 * every distance normalized to 1 unit this reproduces the quilt's adjacency
 * pattern exactly: cells i and j share part of a wall iff |i-j| is 1, 3 or
 * 4, plus the single center contact between cells 1 and 3.
 */

export interface SpiralCell {
  index: number;
  x: number;
  y: number;
  w: number;
  h: number;
}

export function spiralCells(count: number): SpiralCell[] {
  if (count < 1 || !Number.isInteger(count)) {
    throw new Error(`cell count must be a positive integer, got ${count}`);
  }
  const cells: SpiralCell[] = [{ index: 1, x: 0, y: 0, w: 1, h: 1 }];
  let minX = 0;
  let minY = 0;
  let maxX = 1;
  let maxY = 1;
  for (let i = 2; i <= count; i++) {
    switch ((i - 2) % 4) {
      case 0: // south
        cells.push({ index: i, x: minX, y: minY - 1, w: maxX - minX, h: 1 });
        minY -= 1;
        break;
      case 1: // west
        cells.push({ index: i, x: minX - 1, y: minY, w: 1, h: maxY - minY });
        minX -= 1;
        break;
      case 2: // north
        cells.push({ index: i, x: minX, y: maxY, w: maxX - minX, h: 1 });
        maxY += 1;
        break;
      default: // east
        cells.push({ index: i, x: maxX, y: minY, w: 1, h: maxY - minY });
        maxX += 1;
    }
  }
  return cells;
}

/** True when two cells share a wall segment of positive length. */
export function sharesWall(a: SpiralCell, b: SpiralCell): boolean {
  const overlap = (lo1: number, hi1: number, lo2: number, hi2: number) =>
    Math.min(hi1, hi2) - Math.max(lo1, lo2) > 0;
  const touchesVertically =
    (a.x + a.w === b.x || b.x + b.w === a.x) && overlap(a.y, a.y + a.h, b.y, b.y + b.h);
  const touchesHorizontally =
    (a.y + a.h === b.y || b.y + b.h === a.y) && overlap(a.x, a.x + a.w, b.x, b.x + b.w);
  return touchesVertically || touchesHorizontally;
}

export interface BoardBounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

export function boardBounds(cells: SpiralCell[]): BoardBounds {
  const b: BoardBounds = { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  for (const c of cells) {
    b.minX = Math.min(b.minX, c.x);
    b.minY = Math.min(b.minY, c.y);
    b.maxX = Math.max(b.maxX, c.x + c.w);
    b.maxY = Math.max(b.maxY, c.y + c.h);
  }
  return b;
}

/** Largest index whose term still fits on a board for total value n. */
export function visibleCellCount(terms: number[], n: number): number {
  let k = 0;
  while (k < terms.length && terms[k]! <= n) k++;
  return Math.max(k, 1);
}
