#!/usr/bin/env python3
"""Record service responses as fixtures for the frontend test suite.

The UI promises that every displayed number is a verbatim service
response field. Its integration tests therefore run against recorded
bytes from the real service, produced here. Re-run after any change to
the engine or wire format:

    python3 scripts/generate_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from ethicalrisk import load_example_audit
from ethicalrisk.fileio import audit_to_payload, dump_audit
from ethicalrisk.service import create_app

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"
EXAMPLES = ROOT / "frontend" / "examples"


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    EXAMPLES.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    def record(name: str, response) -> None:
        path = FIXTURES / f"{name}.json"
        path.write_bytes(response.content)
        print(f"wrote {path} ({response.status_code}, {len(response.content)} bytes)")

    record("framework_ers_v1", client.get("/v1/frameworks/ers-v1"))
    record("frameworks_list", client.get("/v1/frameworks"))
    record("health", client.get("/v1/health"))

    beta = load_example_audit("beta_ltd")
    beta_payload = audit_to_payload(beta)
    record("score_beta_literal",
           client.post("/v1/frameworks/ers-v1/score",
                       json={"audit": beta_payload, "mode": "literal"}))

    record("whatif_beta_q21_yes",
           client.post("/v1/frameworks/ers-v1/whatif",
                       json={"audit": beta_payload, "question": "Q2.1",
                             "answer": "yes", "mode": "literal"}))

    variant_payload = json.loads(json.dumps(beta_payload))
    variant_payload["answers"]["Q2.1"] = "yes"
    record("score_beta_q21_yes_literal",
           client.post("/v1/frameworks/ers-v1/score",
                       json={"audit": variant_payload, "mode": "literal"}))

    empty_payload = json.loads(json.dumps(beta_payload))
    empty_payload["answers"] = {}
    record("validate_empty",
           client.post("/v1/frameworks/ers-v1/validate", json=empty_payload))

    for name in ("alpha_ltd", "beta_ltd"):
        path = EXAMPLES / f"{name}.json"
        path.write_text(dump_audit(load_example_audit(name)))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
