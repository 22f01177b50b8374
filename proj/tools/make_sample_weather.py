#!/usr/bin/env python3
"""Generate the bundled synthetic daily weather dataset (deterministic)."""

import argparse
import csv
import datetime as dt
import math
import random

WEATHER = ["sun", "fog", "drizzle", "rain", "snow"]


def rows(days, seed):
    rng = random.Random(seed)
    start = dt.date(1950, 1, 1)
    wind = 3.0
    for i in range(days):
        day = start + dt.timedelta(days=i)
        season = math.cos(2 * math.pi * (day.timetuple().tm_yday - 200) / 365.25)
        trend = 0.015 * i / 365.25
        temp = 14.0 + 11.0 * season + trend + rng.gauss(0, 3.2)
        wet = rng.random() < 0.35 - 0.15 * season
        precip = round(rng.expovariate(1 / 6.0), 1) if wet else 0.0
        wind = max(0.0, 0.7 * wind + 0.3 * (3.5 - season) + rng.gauss(0, 0.9))
        if temp < 1.5 and wet:
            weather = "snow"
        elif wet:
            weather = "rain" if precip > 2.5 else "drizzle"
        else:
            weather = "fog" if rng.random() < 0.08 else "sun"
        cells = [day.isoformat(), f"{temp:.1f}", f"{precip:.1f}", f"{wind:.1f}", weather]
        # A few missing readings, as in real station data.
        if rng.random() < 0.004:
            cells[rng.randrange(1, 5)] = ""
        yield cells


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/weather_sample.csv")
    ap.add_argument("--days", type=int, default=25000)
    ap.add_argument("--seed", type=int, default=20160501)
    args = ap.parse_args()
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "temp_max", "precipitation", "wind", "weather"])
        w.writerows(rows(args.days, args.seed))


if __name__ == "__main__":
    main()
