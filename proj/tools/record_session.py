#!/usr/bin/env python3
"""Record a scripted interaction session against a running `pplot serve`.

Writes the request bodies as an event log (replayable with `pplot replay`)
and the final SVG the server returned.

    pplot serve --port 8099 &
    tools/record_session.py --url http://127.0.0.1:8099 \
        --log tests/data/weather_session.json --svg tests/data/weather_session_final.svg
"""

import argparse
import json
import math
import random
from pathlib import Path

import requests

DAY = 86_400_000
ROOT = Path(__file__).resolve().parent.parent


def script(rng, layout):
    """Next event given the last accepted layout from the server."""
    b = layout["boundaries"]
    focus = layout["focus_index"]
    f0, f1 = b[focus], b[focus + 1]
    kind = rng.randrange(6)
    if kind == 0:
        return {"type": "pan", "delta": rng.randint(-300, 300) * DAY}
    if kind == 1:
        return {"type": "hover", "time": rng.randint(f0, f1 - 1)}
    if kind == 2:
        i = rng.randrange(len(b))
        return {"type": "resize_boundary", "boundary": i, "time": b[i] + rng.randint(-200, 200) * DAY}
    if kind == 3:
        return {"type": "zoom", "factor": round(math.exp(rng.uniform(-0.5, 0.5)), 6), "anchor": (f0 + f1) // 2}
    if kind == 4:
        return {"type": "toggle_lock", "boundary": rng.randrange(len(b))}
    return {"type": "hover", "time": None}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--url", default="http://127.0.0.1:8080")
    ap.add_argument("--data", default=ROOT / "data/weather_sample.csv", type=Path)
    ap.add_argument("--spec", default=ROOT / "data/weather_spec.json", type=Path)
    ap.add_argument("--log", required=True, type=Path)
    ap.add_argument("--svg", required=True, type=Path)
    ap.add_argument("--events", default=50, type=int)
    ap.add_argument("--seed", default=7, type=int)
    args = ap.parse_args()

    width, height = 1200, 600
    files = {
        "data": ("data.csv", args.data.read_bytes(), "text/csv"),
        "spec": ("spec.json", args.spec.read_bytes(), "application/json"),
    }
    r = requests.post(f"{args.url}/sessions", params={"width": width, "height": height}, files=files)
    r.raise_for_status()
    created = r.json()
    sid, revision, layout = created["id"], created["revision"], created["scene"]["layout"]

    rng = random.Random(args.seed)
    log = {"width": width, "height": height, "events": []}
    statuses = {}
    for i in range(args.events):
        body = {"event": script(rng, layout), "expected_revision": revision - 1 if i == 25 else revision}
        r = requests.post(f"{args.url}/sessions/{sid}/events", json=body)
        statuses[r.status_code] = statuses.get(r.status_code, 0) + 1
        log["events"].append(body)
        if r.status_code == 200:
            reply = r.json()
            revision, layout = reply["revision"], reply["scene"]["layout"]
        elif r.status_code not in (409, 422):
            raise SystemExit(f"unexpected {r.status_code}: {r.text}")

    r = requests.get(f"{args.url}/sessions/{sid}/scene", params={"format": "svg"})
    r.raise_for_status()
    requests.delete(f"{args.url}/sessions/{sid}")

    args.log.parent.mkdir(parents=True, exist_ok=True)
    args.log.write_text(json.dumps(log, indent=2) + "\n")
    args.svg.write_bytes(r.content)
    print(f"{len(log['events'])} events, statuses {dict(sorted(statuses.items()))}, final revision {revision}")


if __name__ == "__main__":
    main()
