#!/usr/bin/env python3
"""
Ukazna vrstica.

  agol-path --n 6 --out path.json
  lift --genus 2 --in path.json --out lifted.json
  tower --genus 2 --length 3 --seed 7 --out tower.json
  forge --genus 2 --distance 3 --seed 7 --out cert.json
  certify --in cert.json
  surgery --in cert.json --out m.json

Izhodne kode: 0 veljavno, 1 neveljaven certifikat ali neuspela izdelava,
2 nepravilen vhod. Neuspela izdelava ima v logu svoje sporočilo
"Izdelava ni uspela".
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from app.core.errors import ConstructionError, CoverSearchError, MalformedDocumentError, TopologyError, TowerError
from app.services.codec import canonical_json, loads
from app.services.path_service import lift_document, path_document
from app.services.pipeline import build_tower_document, distance_bound, forge
from app.services.surgery import emit_surgery_description
from app.services.verifier import EXIT_INVALID, EXIT_MALFORMED, EXIT_VALID, verify_certificate
from app.utils.logging_utils import get_logger

logger = get_logger("cli")


def _read(path: str) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedDocumentError(f"datoteke {path} ni mogoče prebrati: {exc}") from exc
    return loads(text)


def _write(path: Optional[str], document: Dict[str, Any]) -> None:
    text = canonical_json(document)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info("Zapisano: %s", path)


def cmd_agol_path(args: argparse.Namespace) -> int:
    _write(args.out, path_document(args.n))
    return EXIT_VALID


def cmd_lift(args: argparse.Namespace) -> int:
    _write(args.out, lift_document(args.genus, _read(args.input)))
    return EXIT_VALID


def cmd_tower(args: argparse.Namespace) -> int:
    _write(args.out, build_tower_document(args.genus, args.length, args.seed))
    return EXIT_VALID


def cmd_forge(args: argparse.Namespace) -> int:
    document = forge(args.genus, args.distance, args.seed, args.window)
    _write(args.out, document)
    verdict = document["payload"].get("verdict") or {}
    return EXIT_VALID if verdict.get("valid") else EXIT_INVALID


def cmd_certify(args: argparse.Namespace) -> int:
    document = _read(args.input)
    response = verify_certificate(document)
    for check in response.checks:
        status = "OK" if check.passed else "NAPAKA"
        detail = f" ({check.detail})" if check.detail and not check.passed else ""
        print(f"{status:7} {check.name}{detail}")
    for entry in response.unverified:
        print(f"NEPREVERJENO {entry.kind}: {entry.statement}")
    bound = distance_bound(response, document)
    print(bound if bound else "certifikat NI veljaven")
    return response.exit_code


def cmd_surgery(args: argparse.Namespace) -> int:
    _write(args.out, emit_surgery_description(_read(args.input)))
    return EXIT_VALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Certifikati spodnje meje Heegaardove razdalje.")
    parser.add_argument("--window", type=int, default=None, help="Meja pregledovanja eksponentov")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("agol-path", help="Pot hlačnih razcepov na n-krat preluknjani sferi")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_agol_path)

    p = sub.add_parser("lift", help="Dvig sistema zank na ploskev roda g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser("tower", help="Stolp izpeljanih tirnic nad τ_E")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_tower)

    p = sub.add_parser("forge", help="Celoten certifikat razdalje")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_forge)

    p = sub.add_parser("certify", help="Neodvisno preverjanje certifikata")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("surgery", help="Kirurški opis M iz veljavnega certifikata")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_surgery)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (MalformedDocumentError, ValidationError) as exc:
        logger.error("Nepravilen vhod: %s", exc)
        return EXIT_MALFORMED
    except (CoverSearchError, ConstructionError, TowerError) as exc:
        logger.error("Izdelava ni uspela (%s): %s", type(exc).__name__, exc)
        return EXIT_INVALID
    except TopologyError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
