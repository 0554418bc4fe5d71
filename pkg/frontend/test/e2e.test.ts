import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { GameController } from "../src/controller.js";

/**
 * End-to-end: a scripted human driving the UI controller against the real
 * Python service over HTTP.  Requires the fibquilt package to be installed
 * (`pip install -e ..`).
 */

let server: ChildProcess;
let baseUrl = "";

beforeAll(async () => {
  server = spawn("python3", ["-m", "fibquilt", "serve", "--port", "0"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  baseUrl = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server did not start")), 15_000);
    let buffer = "";
    server.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/serving on (http:\/\/[^\s]+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]!);
      }
    });
    server.on("exit", (code) => reject(new Error(`server exited early (${code})`)));
  });
}, 20_000);

afterAll(() => {
  server?.kill();
});

describe("full game against the random engine", () => {
  it("completes an n=10 game; every offer matches the server's legal list", async () => {
    const api = new ApiClient(baseUrl);
    const controller = new GameController(api);
    await controller.newGame(10, "random", 2024);

    let humanMoves = 0;
    while (controller.session!.status === "active") {
      // the offered list must be exactly what the server says is legal
      const serverListing = await api.listMoves(controller.session!.id);
      expect(controller.offeredMoves.map((m) => m.move)).toEqual(
        serverListing.moves.map((m) => m.move),
      );
      // R2a is offered only when it is the sole move
      const offered = controller.offeredMoves.map((m) => m.move);
      if (offered.includes("R2a")) {
        expect(offered).toEqual(["R2a"]);
        expect(controller.legal!.gated).toBe(true);
      }
      await controller.selectMove(offered[0]!); // engine reply happens inside
      humanMoves++;
      expect(humanMoves).toBeLessThan(100);
    }

    const final = controller.session!;
    expect(final.status).toBe("finished");
    expect(final.total).toBe(10);
    // last mover wins: odd move count means Player1
    expect(final.winner).toBe(final.move_count % 2 === 1 ? "Player1" : "Player2");
    // the displayed board equals a server-side replay of the history panel
    expect(await controller.verifyRoundTrip()).toBe(true);
  }, 30_000);
});

describe("the known odd line on n=6", () => {
  it("plays through the UI with the gate offered only at the end", async () => {
    const api = new ApiClient(baseUrl);
    const controller = new GameController(api);
    await controller.newGame(6, "hotseat");

    const line = ["R3a", "R1a", "R5", "R4a:i=1", "R2a"];
    for (const move of line) {
      const offered = controller.offeredMoves.map((m) => m.move);
      expect(offered).toContain(move);
      if (offered.includes("R2a")) {
        expect(offered).toEqual(["R2a"]); // gate: sole move only
      }
      await controller.selectMove(move);
    }
    expect(controller.session!.status).toBe("finished");
    expect(controller.session!.move_count).toBe(5);
    expect(controller.session!.winner).toBe("Player1");
    expect(controller.session!.state).toBe("{2^1,4^1}");
  }, 30_000);

  it("previews the same line from a fresh session without committing", async () => {
    const api = new ApiClient(baseUrl);
    const controller = new GameController(api);
    await controller.newGame(6, "hotseat");
    const preview = await controller.whatIf(["R3a", "R1a", "R5", "R4a:i=1", "R2a"]);
    expect("session" in preview).toBe(true);
    if ("session" in preview) {
      expect(preview.session.state).toBe("{2^1,4^1}");
      expect(preview.deltas.at(-1)).toBeGreaterThan(0);
    }
    expect(controller.session!.move_count).toBe(0);
  }, 30_000);
});

describe("engine strategies over HTTP", () => {
  it("greedy and optimal both finish a game", async () => {
    for (const opponent of ["greedy-monovariant", "optimal"] as const) {
      const api = new ApiClient(baseUrl);
      const controller = new GameController(api);
      await controller.newGame(8, opponent);
      while (controller.session!.status === "active") {
        await controller.selectMove(controller.offeredMoves[0]!.move);
      }
      expect(controller.session!.status).toBe("finished");
    }
  }, 30_000);
});
