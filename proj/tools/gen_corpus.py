#!/usr/bin/env python3
# Copyright 2026 The Reducto Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the seeded bug corpus.

Each bundle is a library of correct helper functions plus one function with a
seeded bug. Expected values come from Python reference implementations of the
correct functions. Tests of the buggy function are at most a fifth of the
suite and come last. Running the script twice gives identical files.

Usage: gen_corpus.py <out dir>
"""

import json
import os
import random
import sys

INT_MIN = -(1 << 63)


def wrap(v):
    return (v - INT_MIN) % (1 << 64) + INT_MIN


def tdiv(a, b):
    q = abs(a) // abs(b)
    return wrap(q if (a < 0) == (b < 0) else -q)


def tmod(a, b):
    return a - b * tdiv(a, b)


class DivByZero(Exception):
    pass


class OutOfBounds(Exception):
    pass


def at(xs, i):
    if i < 0 or i >= len(xs):
        raise OutOfBounds()
    return xs[i]


def ints(rng, lo, hi, n):
    return [rng.randint(lo, hi) for _ in range(n)]


# Helper functions: SLANG source, reference, argument generator.

HELPERS = {
    "abs_val": (
        ["fn abs_val(x)", "  if x < 0", "    return -x", "  end", "  return x", "end"],
        lambda x: abs(x),
        lambda rng: [rng.randint(-50, 50)],
    ),
    "gcd": (
        ["fn gcd(a, b)", "  while b != 0", "    let t = a % b", "    a = b", "    b = t",
         "  end", "  return a", "end"],
        None,
        lambda rng: [rng.randint(1, 200), rng.randint(1, 200)],
    ),
    "is_even": (
        ["fn is_even(n)", "  return n % 2 == 0", "end"],
        lambda n: tmod(n, 2) == 0,
        lambda rng: [rng.randint(-30, 30)],
    ),
    "sum_list": (
        ["fn sum_list(xs)", "  let s = 0", "  let i = 0", "  while i < len(xs)",
         "    s = s + xs[i]", "    i = i + 1", "  end", "  return s", "end"],
        lambda xs: sum(xs),
        lambda rng: [ints(rng, -20, 20, rng.randint(0, 6))],
    ),
    "max_list": (
        ["fn max_list(xs)", "  let m = xs[0]", "  let i = 1", "  while i < len(xs)",
         "    if xs[i] > m", "      m = xs[i]", "    end", "    i = i + 1", "  end",
         "  return m", "end"],
        lambda xs: max(xs),
        lambda rng: [ints(rng, -20, 20, rng.randint(1, 6))],
    ),
    "count_zeros": (
        ["fn count_zeros(xs)", "  let n = 0", "  let i = 0", "  while i < len(xs)",
         "    if xs[i] == 0", "      n = n + 1", "    end", "    i = i + 1", "  end",
         "  return n", "end"],
        lambda xs: xs.count(0),
        lambda rng: [ints(rng, -2, 2, rng.randint(0, 7))],
    ),
    "power": (
        ["fn power(b, e)", "  let r = 1", "  while e > 0", "    r = r * b",
         "    e = e - 1", "  end", "  return r", "end"],
        lambda b, e: b ** e,
        lambda rng: [rng.randint(-4, 4), rng.randint(0, 6)],
    ),
    "sign": (
        ["fn sign(x)", "  if x > 0", "    return 1", "  end", "  if x < 0",
         "    return -1", "  end", "  return 0", "end"],
        lambda x: (x > 0) - (x < 0),
        lambda rng: [rng.randint(-5, 5)],
    ),
    "fib": (
        ["fn fib(n)", "  let a = 0", "  let b = 1", "  while n > 0", "    let t = a + b",
         "    a = b", "    b = t", "    n = n - 1", "  end", "  return a", "end"],
        None,
        lambda rng: [rng.randint(0, 20)],
    ),
    "min2": (
        ["fn min2(a, b)", "  if a < b", "    return a", "  end", "  return b", "end"],
        lambda a, b: min(a, b),
        lambda rng: [rng.randint(-30, 30), rng.randint(-30, 30)],
    ),
    "reverse_digits": (
        ["fn reverse_digits(n)", "  let r = 0", "  while n > 0", "    r = r * 10 + n % 10",
         "    n = n / 10", "  end", "  return r", "end"],
        None,
        lambda rng: [rng.randint(0, 99999)],
    ),
    "dot": (
        ["fn dot(xs, ys)", "  let s = 0", "  let i = 0", "  while i < len(xs)",
         "    s = s + xs[i] * ys[i]", "    i = i + 1", "  end", "  return s", "end"],
        lambda xs, ys: sum(a * b for a, b in zip(xs, ys)),
        None,
    ),
}


def _gcd(a, b):
    while b != 0:
        a, b = b, tmod(a, b)
    return a


def _fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _reverse(n):
    r = 0
    while n > 0:
        r = r * 10 + tmod(n, 10)
        n = tdiv(n, 10)
    return r


def _dot_args(rng):
    n = rng.randint(0, 5)
    return [ints(rng, -9, 9, n), ints(rng, -9, 9, n)]


HELPERS["gcd"] = (HELPERS["gcd"][0], _gcd, HELPERS["gcd"][2])
HELPERS["fib"] = (HELPERS["fib"][0], _fib, HELPERS["fib"][2])
HELPERS["reverse_digits"] = (HELPERS["reverse_digits"][0], _reverse,
                             HELPERS["reverse_digits"][2])
HELPERS["dot"] = (HELPERS["dot"][0], HELPERS["dot"][1], _dot_args)


# Buggy functions. `source` holds the buggy lines; `bug` is the 1-based line
# within the function and `fix` its corrected text. `guard` marks a fix that
# wraps the bug line in an if block instead of replacing it. `cases` lists
# argument tuples; `correct` and `buggy` are the references.


def count_above_ok(xs, t):
    return sum(1 for x in xs if x > t)


def count_above_bad(xs, t):
    return sum(1 for x in xs if x >= t)


def span_ok(lo, hi, inclusive):
    return hi - lo + (1 if inclusive else 0)


def span_bad(lo, hi, inclusive):
    return hi - lo


def prefix_ok(xs, k):
    return sum(at(xs, i) for i in range(k))


def prefix_bad(xs, k):
    return sum(at(xs, i + 1) for i in range(k))


def mean_step_ok(xs):
    if len(xs) < 2:
        return 0
    return tdiv(xs[-1] - xs[0], len(xs) - 1)


def mean_step_bad(xs):
    if len(xs) < 2:
        raise DivByZero()
    return tdiv(xs[-1] - xs[0], len(xs) - 1)


def gap_ok(a, b, c):
    g1, g2 = b - a, c - b
    return g1 if g1 > g2 else g2 if g2 > g1 else 0


def gap_bad(a, b, c):
    g1, g2 = b - a, c - b
    return g1 if g1 != g2 else 0


def grade_ok(s):
    if s >= 90:
        return 4
    if s > 80:
        return 3
    if s >= 70:
        return 2
    return 0


def grade_bad(s):
    if s >= 90:
        return 4
    if s >= 80:
        return 3
    if s >= 70:
        return 2
    return 0


def ship_ok(w):
    return 5 + (w - 10) * 2 if w > 10 else 5


def ship_bad(w):
    return 5 + (w - 10) * 3 if w > 10 else 5


def in_range_ok(x, lo, hi):
    return lo <= x <= hi


def in_range_bad(x, lo, hi):
    return x >= lo or x <= hi


def middle_ok(xs, shift):
    i = tdiv(len(xs), 2) + shift
    return xs[i] if 0 <= i < len(xs) else 0


def middle_bad(xs, shift):
    return at(xs, tdiv(len(xs), 2) + shift)


def clamp_ok(x, lo, hi):
    return lo if x < lo else hi if x > hi else x


def clamp_bad(x, lo, hi):
    return lo if x < lo or x > hi else x


def digit_sum(base):
    def f(n):
        s = 0
        while n > 0:
            s += tmod(n, base)
            n = tdiv(n, 10)
        return s
    return f


def sum_to_ok(n):
    return sum(range(1, n + 1))


def sum_to_bad(n):
    return sum(range(1, n))


BUGGY = [
    {
        "name": "b01_count_above",
        "class": "relational operator",
        "source": ["fn count_above(xs, t)", "  let limit = t", "  let n = 0", "  let i = 0",
                   "  while i < len(xs)", "    if xs[i] >= t", "      n = n + 1", "    end",
                   "    i = i + 1", "  end", "  return n", "end"],
        "bug": 6, "fix": "    if xs[i] > t",
        "correct": count_above_ok, "buggy": count_above_bad,
        "cases": [([3, 5, 1], 3), ([7, 2, 9, 7], 7), ([4, 4, 6], 4), ([1, 2, 3], 5),
                  ([6, 8], 1), ([], 0), ([-1, -5, 0], -2), ([10, 20, 30], 15),
                  ([2, 2, 2], 3), ([9], 0), ([0, 5, 5, 0], 1)],
    },
    {
        "name": "b02_span_length",
        "class": "wrong constant on a dead store",
        "source": ["fn span_length(lo, hi, inclusive)", "  let bias = 0", "  if inclusive",
                   "    bias = 0", "  end", "  return hi - lo + bias", "end"],
        "bug": 4, "fix": "    bias = 1",
        "correct": span_ok, "buggy": span_bad,
        "cases": [(1, 5, True), (0, 10, True), (3, 4, False), (2, 9, False),
                  (-4, 4, False), (7, 7, False), (1, 20, False), (-3, 0, False),
                  (5, 6, False), (0, 100, False)],
    },
    {
        "name": "b03_prefix_total",
        "class": "off-by-one index",
        "source": ["fn prefix_total(xs, k)", "  let s = 0", "  let i = 0", "  while i < k",
                   "    s = s + xs[i + 1]", "    i = i + 1", "  end", "  return s", "end"],
        "bug": 5, "fix": "    s = s + xs[i]",
        "correct": prefix_ok, "buggy": prefix_bad,
        "cases": [([4, 1, 7], 1), ([2, 9, 3, 5], 2), ([5, 5], 0), ([1, 2, 3], 0),
                  ([8, -3, 4, 4], 0), ([6], 0), ([0, 0, 0], 2), ([3, 3, 3, 3], 3),
                  ([9, 1, 1], 0), ([2, 2], 1)],
    },
    {
        "name": "b04_mean_step",
        "class": "missing guard",
        "source": ["fn mean_step(xs)", "  let steps = len(xs) - 1", "  print steps",
                   "  let total = xs[steps] - xs[0]", "  return total / steps", "end"],
        "bug": 5, "fix": "  if steps != 0", "guard": True,
        "correct": mean_step_ok, "buggy": mean_step_bad,
        "cases": [([5],), ([4, 6],), ([1, 4, 10],), ([-7, 2],), ([9, 9, 9],), ([0],),
                  ([3, 5, 7, 9],), ([10, 0],), ([100, 1, 50],), ([2, 2, 8],)],
    },
    {
        "name": "b05_larger_gap",
        "class": "wrong returned variable",
        "source": ["fn larger_gap(a, b, c)", "  let g1 = b - a", "  let g2 = c - b",
                   "  print g1", "  if g1 > g2", "    return g1", "  end", "  if g2 > g1",
                   "    return g1", "  end", "  return 0", "end"],
        "bug": 9, "fix": "    return g2",
        "correct": gap_ok, "buggy": gap_bad,
        "cases": [(0, 8, 9), (1, 3, 9), (0, 9, 10), (5, 8, 9), (-4, 6, 7), (2, 10, 12),
                  (0, 1, 2), (3, 7, 11), (1, 20, 21), (-2, 5, 6)],
    },
    {
        "name": "b06_grade",
        "class": "relational operator",
        "source": ["fn grade(s)", "  let probe = s", "  if s >= 90", "    return 4", "  end",
                   "  if s >= 80", "    return 3", "  end", "  if s >= 70", "    return 2",
                   "  end", "  return 0", "end"],
        "bug": 6, "fix": "  if s > 80",
        "correct": grade_ok, "buggy": grade_bad,
        "cases": [(80,), (95,), (85,), (72,), (60,), (90,), (70,), (79,), (81,), (12,)],
    },
    {
        "name": "b07_shipping",
        "class": "wrong constant",
        "source": ["fn shipping(w)", "  let base = 5", "  let note = w", "  if w > 10",
                   "    return base + (w - 10) * 3", "  end", "  return base", "end"],
        "bug": 5, "fix": "    return base + (w - 10) * 2",
        "correct": ship_ok, "buggy": ship_bad,
        "cases": [(12,), (20,), (15,), (3,), (10,), (0,), (7,), (9,), (1,), (5,)],
    },
    {
        "name": "b08_in_range",
        "class": "boolean operator",
        "source": ["fn in_range(x, lo, hi)", "  return x >= lo or x <= hi", "end"],
        "bug": 2, "fix": "  return x >= lo and x <= hi",
        "correct": in_range_ok, "buggy": in_range_bad,
        "cases": [(0, 1, 5), (9, 1, 5), (3, 1, 5), (1, 1, 5), (5, 1, 5), (-2, -3, 0),
                  (4, 4, 4), (2, 0, 9), (7, 2, 8), (0, -1, 1)],
    },
    {
        "name": "b09_middle",
        "class": "missing guard",
        "source": ["fn middle(xs, shift)", "  let i = len(xs) / 2 + shift", "  return xs[i]",
                   "end"],
        "bug": 3, "fix": "  if i >= 0 and i < len(xs)", "guard": True,
        "correct": middle_ok, "buggy": middle_bad,
        "cases": [([1, 2], 1), ([5], -1), ([4, 8, 9], 0), ([4, 8, 9], 1), ([7], 0),
                  ([3, 1], -1), ([6, 6, 2, 9], 1), ([0, 5], 0), ([2, 4, 6], -1), ([9, 8], -1)],
    },
    {
        "name": "b10_clamp",
        "class": "wrong returned variable",
        "source": ["fn clamp(x, lo, hi)", "  let span = hi - lo", "  if x < lo",
                   "    return lo", "  end", "  if x > hi", "    return lo", "  end",
                   "  return x", "end"],
        "bug": 7, "fix": "    return hi",
        "correct": clamp_ok, "buggy": clamp_bad,
        "cases": [(12, 0, 10), (50, -5, 5), (-3, 0, 10), (5, 0, 10), (0, 0, 10),
                  (10, 0, 10), (-9, -2, 2), (1, -2, 2), (7, 3, 9), (4, 4, 6)],
    },
    {
        "name": "b11_digit_sum",
        "class": "wrong constant",
        "source": ["fn digit_sum(n)", "  let s = 0", "  print n", "  while n > 0",
                   "    s = s + n % 9", "    n = n / 10", "  end", "  return s", "end"],
        "bug": 5, "fix": "    s = s + n % 10",
        "correct": digit_sum(10), "buggy": digit_sum(9),
        "cases": [(99,), (19,), (123,), (0,), (5,), (8,), (71,), (40,), (312,), (1,)],
    },
    {
        "name": "b12_sum_to",
        "class": "relational operator",
        "source": ["fn sum_to(n)", "  let s = 0", "  let i = 1", "  while i < n",
                   "    s = s + i", "    i = i + 1", "  end", "  return s", "end"],
        "bug": 4, "fix": "  while i <= n",
        "correct": sum_to_ok, "buggy": sum_to_bad,
        "cases": [(3,), (5,), (1,), (0,), (-2,), (-7,), (-1,), (0,), (-4,), (-10,)],
    },
]


def value(v):
    if isinstance(v, bool):
        return {"bool": v}
    if isinstance(v, int):
        return {"int": v}
    if isinstance(v, list):
        return {"array": [value(x) for x in v]}
    raise TypeError(v)


def expectation(fn, args):
    try:
        return {"value": value(fn(*args))}
    except DivByZero:
        return {"error": "DivByZero"}
    except OutOfBounds:
        return {"error": "IndexOutOfBounds"}


def call(fn_name, args):
    return {"fn": fn_name, "args": [value(a) for a in args]}


def build(entry, seed):
    rng = random.Random(seed)
    helper_names = sorted(rng.sample(sorted(HELPERS), 7))
    before = helper_names[:3]
    after = helper_names[3:]
    lines = []
    for name in before:
        lines += HELPERS[name][0]
    offset = len(lines)
    lines += entry["source"]
    for name in after:
        lines += HELPERS[name][0]
    bug_line = offset + entry["bug"]
    fn_name = entry["source"][0].split()[1].split("(")[0]

    tests = []
    for name in helper_names:
        _, ref, gen = HELPERS[name]
        for k in range(rng.randint(7, 10)):
            args = gen(rng)
            tests.append({"id": f"{name}_{k + 1}", "call": call(name, args),
                          "expect": expectation(ref, args)})
    failing = 0
    for k, args in enumerate(entry["cases"]):
        ok = expectation(entry["correct"], args)
        bad = expectation(entry["buggy"], args)
        failing += ok != bad
        tests.append({"id": f"{fn_name}_{k + 1}", "call": call(fn_name, args), "expect": ok})
    relevant = len(entry["cases"])
    assert failing >= 1, entry["name"]
    assert relevant * 5 <= len(tests), entry["name"]
    assert 40 <= len(tests) <= 200, entry["name"]
    manifest = {
        "program": "program.sl",
        "tests": "tests.json",
        "ground_truth": {"bug_line": bug_line, "patched_text": entry["fix"],
                         "kind": "guard" if entry.get("guard") else "replace"},
        "bug_class": entry["class"],
        "bug_relevant_tests": relevant,
        "failing_tests": failing,
    }
    return lines, tests, manifest


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    out = sys.argv[1]
    for seed, entry in enumerate(BUGGY, start=1):
        lines, tests, manifest = build(entry, seed)
        d = os.path.join(out, entry["name"])
        os.makedirs(d, exist_ok=True)
        with open(os.path.join(d, "program.sl"), "w", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
        with open(os.path.join(d, "tests.json"), "w", newline="\n") as f:
            json.dump(tests, f, indent=1)
            f.write("\n")
        with open(os.path.join(d, "manifest.json"), "w", newline="\n") as f:
            json.dump(manifest, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
