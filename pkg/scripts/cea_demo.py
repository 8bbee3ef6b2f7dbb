"""Stream the humidity/temperature example and show the complex events per position.

    python scripts/cea_demo.py [--max-cost 5]
"""
import argparse

from rankenum.enumeration import enumerate_filtered, stream_new, stream_outputs, stream_push
from rankenum.fixtures import cea0, complex_event, sensor_events


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--max-cost", type=int, default=None)
    args = p.parse_args()

    s = stream_new(cea0())
    for ev in sensor_events():
        s = stream_push(s, ev)
        outs = list(enumerate_filtered(stream_outputs(s), max_cost=args.max_cost))
        print(f"@{s.position} {ev}: {len(outs)} complex events")
        for o in outs:
            print(f"    cost {o.cost}: {sorted(complex_event(o.enc))}")


if __name__ == "__main__":
    main()
