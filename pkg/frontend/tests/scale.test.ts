import assert from "node:assert/strict";
import { test } from "node:test";
import { extent, linearScale, niceTicks, padded } from "../src/scale.js";

test("linearScale maps the domain endpoints to the range", () => {
  const s = linearScale([0, 10], [100, 200]);
  assert.equal(s(0), 100);
  assert.equal(s(10), 200);
  assert.equal(s(5), 150);
});

test("linearScale survives a degenerate domain", () => {
  const s = linearScale([3, 3], [0, 100]);
  assert.equal(s(3), 50);
});

test("niceTicks stay inside the domain and ascend", () => {
  const ticks = niceTicks([-1.7, 2.3], 4);
  assert.ok(ticks.length >= 2 && ticks.length <= 7);
  for (const t of ticks) {
    assert.ok(t >= -1.7 - 1e-9 && t <= 2.3 + 1e-9);
  }
  const sorted = [...ticks].sort((a, b) => a - b);
  assert.deepEqual(ticks, sorted);
});

test("extent and padded", () => {
  assert.deepEqual(extent([3, -1, 2]), [-1, 3]);
  const [lo, hi] = padded([0, 10], 0.1);
  assert.ok(lo < 0 && hi > 10);
});
