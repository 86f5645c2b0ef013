"""
The scoring service
===================

The same engine behind an HTTP API (the questionnaire UI's backend).
This demo starts the service on a loopback port, scores the shipped Beta
example over HTTP, and asks a what-if question.
"""

import json
import threading
import time
import urllib.request

import uvicorn

from ethicalrisk import load_example_audit
from ethicalrisk.fileio import audit_to_payload
from ethicalrisk.service import create_app

PORT = 8921
server = uvicorn.Server(uvicorn.Config(create_app(), host="127.0.0.1", port=PORT,
                                       log_level="warning"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)


def call(method, path, body=None):
    request = urllib.request.Request(
        f"http://127.0.0.1:{PORT}{path}",
        data=None if body is None else json.dumps(body).encode(),
        headers={"content-type": "application/json"},
        method=method,
    )
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read())


print("frameworks:", call("GET", "/v1/frameworks")["frameworks"])

beta = audit_to_payload(load_example_audit("beta_ltd"))
report = call("POST", "/v1/frameworks/ers-v1/score", beta)["report"]
print("dimensions:", report["dimensions"])
print("normalized:", report["normalized"])

whatif = call("POST", "/v1/frameworks/ers-v1/whatif",
              {"audit": beta, "question": "Q2.1", "answer": "yes"})
print("flipping Q2.1 to yes changes the total by", whatif["deltas"]["total"])

server.should_exit = True
thread.join(timeout=5)
