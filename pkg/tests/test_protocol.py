"""Wire protocol: session flow, error responses, transcript determinism."""

import json
import subprocess
import sys

from puzzlebench.protocol import Session


def send(session, **msg):
    return json.loads(session.handle_line(json.dumps(msg)))


def test_make_reset_step_flow():
    s = Session()
    made = send(s, cmd="make", puzzle="flood", params="3x3c6m5#42", obs="state")
    assert made["ok"] and made["actions"] == 5 and made["v"] == 1
    assert made["action_names"] == ["UP", "DOWN", "LEFT", "RIGHT", "SELECT"]
    reset = send(s, cmd="reset")
    assert reset["ok"]
    assert set(reset["info"]) == {"puzzle_state", "action_mask"}
    step = send(s, cmd="step", action=1)
    assert step["ok"]
    assert {"observation", "reward", "terminated", "truncated", "info"} <= set(step)
    mask = send(s, cmd="mask")
    assert mask["ok"] and len(mask["mask"]) == 5


def test_id_echo():
    s = Session()
    out = send(s, cmd="make", puzzle="fifteen", params="2x2", id=99)
    assert out["id"] == 99
    out = send(s, cmd="bogus", id="abc")
    assert out["id"] == "abc" and not out["ok"]


def test_errors():
    s = Session()
    assert send(s, cmd="step", action=0)["error"] == "no_env"
    assert send(s, cmd="reset")["error"] == "no_env"
    assert send(s, cmd="mask")["error"] == "no_env"
    assert send(s, cmd="nope")["error"] == "unknown_cmd"
    assert send(s, cmd="make", puzzle="nope", params="2x2")["error"] == "bad_params"
    assert send(s, cmd="make", puzzle="fifteen", params="0x0")["error"] == "bad_params"
    send(s, cmd="make", puzzle="fifteen", params="2x2")
    send(s, cmd="reset")
    assert send(s, cmd="step", action=99)["error"] == "bad_action"
    assert send(s, cmd="step", action="UP")["error"] == "bad_action"
    assert send(s, cmd="step")["error"] == "bad_action"
    assert json.loads(s.handle_line("not json at all"))["error"] == "parse_error"
    assert json.loads(s.handle_line("[1,2,3]"))["error"] == "parse_error"


def test_step_after_done_is_error_not_crash():
    s = Session()
    send(s, cmd="make", puzzle="fifteen", params="2x2", max_steps=1, seed=3)
    send(s, cmd="reset")
    send(s, cmd="step", action=0)
    out = send(s, cmd="step", action=0)
    assert out == {"ok": False, "error": "episode_over", "v": 1}


def test_close_discards_env():
    s = Session()
    send(s, cmd="make", puzzle="fifteen", params="2x2")
    assert send(s, cmd="close")["ok"]
    assert send(s, cmd="reset")["error"] == "no_env"


def test_spec_reports_schema():
    s = Session()
    out = send(s, cmd="spec", puzzle="netslide", params="2x3b1", obs="state")
    assert out["ok"] and out["actions"] == 5
    keys = out["observation"]["keys"]
    assert list(keys) == [
        "barriers", "cursor_pos", "height", "last_move_col", "last_move_dir",
        "last_move_row", "move_count", "movetarget", "tiles", "width", "wrapping",
    ]
    assert keys["tiles"]["shape"] == [6]
    out = send(s, cmd="spec", puzzle="fifteen", params="2x2", obs="pixels")
    assert out["observation"] == {"type": "pixels", "shape": [3, 128, 128]}
    # spec with no env and no puzzle
    assert send(s, cmd="spec")["error"] == "no_env"


def test_pixel_observation_base64():
    import base64

    s = Session()
    send(s, cmd="make", puzzle="fifteen", params="2x2", obs="pixels", seed=1)
    out = send(s, cmd="reset")
    obs = out["observation"]
    assert obs["shape"] == [3, 128, 128] and obs["dtype"] == "uint8"
    raw = base64.b64decode(obs["b64"])
    assert len(raw) == 3 * 128 * 128


def test_transcript_determinism():
    requests = [
        {"cmd": "make", "puzzle": "flood", "params": "3x3c6m5#42", "obs": "state"},
        {"cmd": "reset"},
        {"cmd": "step", "action": 1},
        {"cmd": "step", "action": 4},
        {"cmd": "step", "action": 3},
        {"cmd": "mask"},
    ]
    transcripts = []
    for _ in range(2):
        s = Session()
        transcripts.append([s.handle_line(json.dumps(r)) for r in requests])
    assert transcripts[0] == transcripts[1]


def test_stdio_subprocess_session():
    lines = "\n".join(
        [
            json.dumps({"cmd": "make", "puzzle": "fifteen", "params": "2x2", "seed": 5}),
            json.dumps({"cmd": "reset"}),
            json.dumps({"cmd": "step", "action": 0}),
            json.dumps({"cmd": "close"}),
        ]
    )
    proc = subprocess.run(
        [sys.executable, "-m", "puzzlebench.cli", "serve"],
        input=lines,
        capture_output=True,
        text=True,
        timeout=60,
    )
    out = [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]
    assert len(out) == 4 and all(msg["ok"] for msg in out)


def test_fuzz_small_corpus_session_survives():
    import random

    rnd = random.Random(0)
    s = Session()
    send(s, cmd="make", puzzle="fifteen", params="2x2")
    junk = [
        "", "{", "}", "null", "true", "3", '"x"', "[]", '{"cmd":null}',
        '{"cmd":1}', '{"cmd":"step","action":null}', '{"cmd":"make"}',
        '{"cmd":"make","puzzle":"fifteen","params":"-1x-1"}',
        '{"cmd":"step","action":1e308}',
    ]
    for _ in range(500):
        junk.append("".join(chr(rnd.randrange(32, 127)) for _ in range(rnd.randrange(1, 30))))
    for line in junk:
        raw = s.handle_line(line)
        msg = json.loads(raw)
        assert msg["v"] == 1 and isinstance(msg["ok"], bool)
    # the session still works afterwards
    assert send(s, cmd="reset")["ok"]


def test_step_observation_shapes_match_spec_handshake():
    s = Session()
    send(s, cmd="make", puzzle="netslide", params="2x3b1", seed=2)
    schema = send(s, cmd="spec")["observation"]["keys"]
    send(s, cmd="reset")
    for action in (0, 1, 4, 2, 4, 3):
        out = send(s, cmd="step", action=action)
        if not out["ok"]:
            break
        obs = out["observation"]
        assert set(obs) == set(schema)
        for key, meta in schema.items():
            value = obs[key]
            if meta["shape"] == []:
                assert isinstance(value, int)
            else:
                assert len(value) == meta["shape"][0]
        if out["terminated"] or out["truncated"]:
            break
    # pixel sessions advertise and deliver the same tensor shape
    s2 = Session()
    send(s2, cmd="make", puzzle="fifteen", params="2x2", obs="pixels", seed=2)
    shape = send(s2, cmd="spec")["observation"]["shape"]
    out = send(s2, cmd="reset")
    assert out["observation"]["shape"] == shape


def test_tcp_two_concurrent_sessions_are_independent():
    import socket
    import threading
    import time

    from puzzlebench.protocol import ThreadingTCPServer, _TCPHandler

    server = ThreadingTCPServer(("127.0.0.1", 0), _TCPHandler)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        def session(seed):
            sock = socket.create_connection(("127.0.0.1", port), timeout=10)
            rd = sock.makefile("r", encoding="utf-8")
            wr = sock.makefile("w", encoding="utf-8")

            def ask(**msg):
                wr.write(json.dumps(msg) + "\n")
                wr.flush()
                return json.loads(rd.readline())

            return sock, ask

        sock_a, ask_a = session(1)
        sock_b, ask_b = session(2)
        assert ask_a(cmd="make", puzzle="fifteen", params="2x2", seed=1)["ok"]
        assert ask_b(cmd="make", puzzle="flood", params="3x3c6m5", seed=2)["ok"]
        oa = ask_a(cmd="reset")
        ob = ask_b(cmd="reset")
        assert len(oa["info"]["action_mask"]) == 4
        assert len(ob["info"]["action_mask"]) == 5
        # interleaved steps do not leak across sessions
        ra = ask_a(cmd="step", action=0)
        rb = ask_b(cmd="step", action=4)
        assert "tiles" in ra["observation"] and "grid" in rb["observation"]
        sock_a.close()
        sock_b.close()
    finally:
        server.shutdown()
        server.server_close()
