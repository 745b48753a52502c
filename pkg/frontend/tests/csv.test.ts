import assert from "node:assert/strict";
import { test } from "node:test";
import { parseCsv, requireColumns, toNumber } from "../src/csv.js";

test("parseCsv splits header and rows", () => {
  const table = parseCsv("a,b\n1,2\n3,4\n");
  assert.deepEqual(table.header, ["a", "b"]);
  assert.deepEqual(table.rows, [
    ["1", "2"],
    ["3", "4"],
  ]);
});

test("parseCsv tolerates trailing newline and empty input", () => {
  assert.deepEqual(parseCsv("").rows, []);
  assert.equal(parseCsv("x\n1\n\n").rows.length, 1);
});

test("requireColumns names the missing column", () => {
  const table = parseCsv("x,theta\n0,1\n");
  assert.throws(() => requireColumns(table, ["x", "method"], "curves.csv"), /method/);
  assert.deepEqual(requireColumns(table, ["theta", "x"], "ok"), [1, 0]);
});

test("toNumber rejects junk", () => {
  assert.equal(toNumber("2.5", "ctx"), 2.5);
  assert.throws(() => toNumber("abc", "ctx"), /expected a number/);
});
