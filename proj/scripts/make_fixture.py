#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixture dataset under data/fixture/.

25 assets (15 large, 6 mid, 4 small) with annual year-end closes 1998-2023,
a market index over the same span, disaster-loss and emissions-intensity
series. Deterministic: rerunning this script reproduces the files byte for
byte.
"""

import json
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixture"
YEARS = list(range(1998, 2024))  # price years; returns 1999-2023

rng = np.random.default_rng(20230815)


def fmt(x):
    return f"{x:.6f}"


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    # --- assets ---------------------------------------------------------
    specs = []
    for i in range(15):
        specs.append((f"LRG{i+1:02d}", f"Large Cap Co {i+1}", "large"))
    for i in range(6):
        specs.append((f"MID{i+1:02d}", f"Mid Cap Co {i+1}", "mid"))
    for i in range(4):
        specs.append((f"SML{i+1:02d}", f"Small Cap Co {i+1}", "small"))

    rows = []
    for ticker, name, cls in specs:
        env = round(float(rng.uniform(40.0, 88.0)), 1)
        drift = float(rng.uniform(0.06, 0.16))
        vol = float(rng.uniform(0.15, 0.30))
        price = float(rng.uniform(50.0, 400.0))
        for year in YEARS:
            rows.append((ticker, name, cls, env, year, round(price, 4)))
            shock = float(rng.normal(0.0, 1.0))
            price *= max(1.0 + drift + vol * shock, 0.4)
    with open(OUT / "assets.csv", "w") as f:
        f.write("ticker,name,cap_class,env_score,year,close\n")
        for t, n, c, e, y, p in rows:
            f.write(f"{t},{n},{c},{e},{y},{p}\n")

    # --- market index ----------------------------------------------------
    level = 1000.0
    with open(OUT / "market.csv", "w") as f:
        f.write("year,index_level\n")
        for year in YEARS:
            f.write(f"{year},{round(level, 4)}\n")
            level *= max(1.0 + 0.10 + 0.16 * float(rng.normal(0.0, 1.0)), 0.5)

    # --- disaster losses (USD bn) ----------------------------------------
    # Skewed so that 25 USD bn sits near the top of the trailing window.
    with open(OUT / "losses.csv", "w") as f:
        f.write("year,damage_usd_bn\n")
        for year in YEARS[1:]:
            loss = float(np.exp(rng.normal(np.log(9.0), 0.55)))
            f.write(f"{year},{round(min(loss, 28.0), 3)}\n")

    # --- emissions intensity (tCO2 / 1000 USD), gently declining ---------
    intensity = 0.42
    with open(OUT / "intensity.csv", "w") as f:
        f.write("year,tco2_per_kusd\n")
        for year in YEARS[1:]:
            f.write(f"{year},{round(intensity, 5)}\n")
            intensity -= float(rng.uniform(0.004, 0.008))

    # --- run and scenario configs ----------------------------------------
    config = {
        "inputs": {
            "assets": "assets.csv",
            "losses": "losses.csv",
            "intensity": "intensity.csv",
            "market": "market.csv",
        },
        "rf": 0.0695,
        "samples": 20000,
        "seed": 42,
        "initial_value": 100.0,
        "span": {"start": 1998, "end": 2023},
        "screening": {
            "min_env_score": 35.0,
            "quota": {"large": 15, "mid": 6, "small": 4},
            "metrics": ["long_cagr", "short_cagr", "excess_over_market"],
        },
        "scenario_config": "scenarios.json",
        "out": "out",
    }
    (OUT / "config.json").write_text(json.dumps(config, indent=2) + "\n")

    scenarios = {
        "pf_window_years": 10,
        "high_y2_market_reduction": 0.05,
        "stress_y3_market_premium": 0.02,
        "stress_y3_pf_percentile": 0.85,
    }
    (OUT / "scenarios.json").write_text(json.dumps(scenarios, indent=2) + "\n")


if __name__ == "__main__":
    main()
