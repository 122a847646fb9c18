#!/usr/bin/env python3
"""Concordance sweep: Frobenius-survey estimates vs the exact classifiers.

Draws a seeded corpus of rational curves, runs classify3/classify4 and
the mod-3/mod-4 degree oracle on each, and prints one JSON row per
curve.  A stabilized estimate that disagrees with the exact degree is
counted as a discordance (and has never been observed; the acceptance
suite pins that at 100 curves).
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from torsionfields.classify3 import classify3
from torsionfields.classify4 import classify4
from torsionfields.curve import discriminant
from torsionfields.oracle import chebotarev_degree


@dataclass
class CorpusConfig:
    curves: int = 100
    budget: int = 60
    window: int = 15
    seed: int = 2024
    coeff_bound: int = 50


def draw(cfg: CorpusConfig):
    rng = random.Random(cfg.seed)
    seen = set()
    while len(seen) < cfg.curves:
        A = Fraction(rng.randint(-cfg.coeff_bound, cfg.coeff_bound),
                     rng.choice([1, 1, 1, 2, 3]))
        B = Fraction(rng.randint(-cfg.coeff_bound, cfg.coeff_bound),
                     rng.choice([1, 1, 1, 2, 3]))
        if discriminant(A, B) == 0 or (A, B) in seen:
            continue
        seen.add((A, B))
        yield A, B


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--curves", type=int, default=100)
    ap.add_argument("--budget", type=int, default=60)
    ap.add_argument("--window", type=int, default=15)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    cfg = CorpusConfig(curves=args.curves, budget=args.budget,
                       window=args.window, seed=args.seed)

    discord = unsettled = 0
    for A, B in draw(cfg):
        row = {"A": str(A), "B": str(B)}
        for m, classifier in ((3, classify3), (4, classify4)):
            exact = classifier(A, B).degree
            est = chebotarev_degree(A, B, m, budget=cfg.budget, window=cfg.window)
            row[f"d{m}"] = exact
            row[f"oracle{m}"] = est.estimate
            row[f"stab{m}"] = est.stabilized
            if not est.stabilized:
                unsettled += 1
            elif est.estimate != exact:
                discord += 1
        print(json.dumps(row))

    print(f"{cfg.curves} curves: {discord} discordant, {unsettled} unsettled",
          file=sys.stderr)
    return 1 if discord else 0


if __name__ == "__main__":
    sys.exit(main())
