"""Convergence of the boundary quadrature.

Prints, for a grid of theta, the normalization error of the weighted rule and
the error against the closed-form cosine transform, first for the default
graded rule at increasing node counts and then for a uniform rule with the
same number of panels for comparison.
"""

import argparse
import math

import numpy as np

from ktrace import interpolation as ip

THETAS = (0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99)
OMEGAS = (0.5, 1.0, 2.0)


def errors(rule, theta):
    norm = abs(math.fsum(rule.weighted(theta).tolist()) - 1.0)
    fourier = max(
        abs(ip.integrate_boundary(lambda t: np.cos(w * t), theta, rule) - ip.beta_fourier(theta, w))
        for w in OMEGAS
    )
    return norm, fourier


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=3, help="number of node doublings to show")
    args = ap.parse_args()

    rules = [(f"graded x{ip.rule_for(r).order}", ip.rule_for(r)) for r in range(args.levels)]
    panels = ip.default_rule().panels
    uniform = np.linspace(-ip.TRUNCATION, ip.TRUNCATION, panels + 1)
    rules.append((f"uniform x{ip.PANEL_ORDER}", ip.QuadratureRule(uniform, ip.PANEL_ORDER)))

    print(f"{'rule':<14} {'nodes':>6} {'theta':>6} {'normalization':>14} {'cosine':>10}")
    for name, rule in rules:
        for theta in THETAS:
            norm, fourier = errors(rule, theta)
            print(f"{name:<14} {len(rule):>6} {theta:>6.2f} {norm:>14.2e} {fourier:>10.2e}")


if __name__ == "__main__":
    main()
