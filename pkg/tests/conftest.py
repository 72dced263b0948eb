import json
import threading
import hashlib
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from depscore.corpus import Utterance, WordList, WordListKind
from depscore.preprocess import CleanUtterance

FIXTURES = Path(__file__).parent / "fixtures"


def make_unit(tokens, start=0.0, stop=1.0, raw=None):
    tokens = tuple(tokens)
    src = Utterance(start, max(start, stop), "Participant", " ".join(tokens))
    return CleanUtterance(src, " ".join(tokens) or "x", tokens, tuple(raw if raw is not None else tokens))


def wordlist(kind, *words):
    return WordList(WordListKind(kind), frozenset(words))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def stub_sentiment(text: str) -> dict:
    """Deterministic fake service reply derived from the request text."""
    h = int(hashlib.md5(text.encode()).hexdigest(), 16)
    return {"score": ((h % 2001) - 1000) / 1000, "magnitude": (h % 97) / 10}


class _Handler(BaseHTTPRequestHandler):
    def do_POST(self):
        body = self.rfile.read(int(self.headers.get("Content-Length", 0)))
        self.server.requests.append(body)
        if self.path == "/fail":
            self.send_response(500)
            self.end_headers()
            return
        if self.path == "/bad":
            reply = {"score": -1.5, "magnitude": 1}
        else:
            reply = stub_sentiment(json.loads(body)["text"])
        data = json.dumps(reply).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture
def stub_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
    server.requests = []
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address
    server.url = f"http://{host}:{port}"
    yield server
    server.shutdown()
    server.server_close()


# Acceptance criteria append (number, title, passed, detail) here; printed at session end.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:02d} {title}{': ' + detail if detail else ''}")
