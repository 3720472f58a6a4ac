#!/usr/bin/env python3
"""Standalone reference evaluation of the closed-form bounds.

Written independently of the C++ implementation; the acceptance suite runs
this file and compares values at 1e-6 relative tolerance. Only the standard
library is used. Prints a single JSON object.
"""
import json
import math


def update_cap(w, a, eta, k, v, R):
    t1 = w ** 2 / a ** 2
    t2 = w ** 2 / (k * eta * v ** 2 * a ** 2)
    t3 = math.sqrt(R * (8 * k ** 2 * eta ** 2 * v ** 2 + 8 * eta * k)) * w ** 1.5 \
        / (2 * k * (eta * v * a) ** 1.5)
    t4 = 2 * R * w / (eta * v * a)
    return t1 + t2 + t3 + t4


def update_floor(w, a, eta, k, v, R):
    b1 = R * w / (eta * v * a) + min(w ** 2 / (2 * eta * k * v ** 2) - a * w ** 2, 0.0)
    b2 = R * w / (eta * v) + min(w ** 2 / (2 * a ** 2 * eta * k * v ** 2) - w / a * w, 0.0)
    return max(min(b1, b2), w ** 2)


def compression(c_k, n, delta, l_v):
    tail = 4 * c_k * math.log(n / delta) / n
    return l_v + math.sqrt(l_v * tail) + 2 * tail


def main():
    values = {
        "mk": update_cap(1.0, 0.5, 1.0, 2, 0.5, 0.5),
        "mk_wstar2": update_cap(2.0, 0.5, 1.0, 2, 0.5, 0.5),
        "lower": update_floor(2.0, 0.5, 1.0, 2, 0.5, 0.5),
        "compression": compression(10, 3000, 0.05, 0.0),
        "generalization": compression(math.ceil(update_cap(1.0, 0.5, 1.0, 2, 0.5, 0.5)),
                                      3000, 0.05, 0.0),
    }
    print(json.dumps(values))


if __name__ == "__main__":
    main()
