#!/usr/bin/env python3
import argparse
import json
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from app.services.codec import canonical_json  # noqa: E402
from app.services.pipeline import forge  # noqa: E402
from app.services.verifier import verify_certificate  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description="Izdelaj in preveri certifikate za več razdalj.")
    parser.add_argument("--genus", type=int, default=2)
    parser.add_argument("--distances", default="2,3", help="Seznam razdalj, ločen z vejicami")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=None, help="Mapa za certifikate")
    args = parser.parse_args()

    results = []
    for n in (int(x) for x in args.distances.split(",") if x.strip()):
        start = time.time()
        document = forge(args.genus, n, args.seed)
        again = forge(args.genus, n, args.seed)
        response = verify_certificate(document)
        results.append(
            {
                "distance": n,
                "valid": response.valid,
                "deterministic": canonical_json(document) == canonical_json(again),
                "seconds": round(time.time() - start, 1),
                "failed": [c.name for c in response.checks if not c.passed],
            }
        )
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"cert_g{args.genus}_n{n}.json").write_text(canonical_json(document), encoding="utf-8")

    print(json.dumps(results, indent=2, ensure_ascii=False))
    if not all(r["valid"] and r["deterministic"] for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
