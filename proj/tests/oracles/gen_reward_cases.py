"""Builds tests/data/reward_cases.jsonl.

Every case is hand-constructed here; the expected breakdown is computed by the
reference implementation in oracle.py and cross-checked against a label that
states the intended accuracy sign.
"""

import json
import os
import sys

import oracle

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data", "reward_cases.jsonl")

SCREEN = (1000, 1000)


def boundary_pixel(x0, thr, w):
    """Smallest integer x > x0 with x/w - x0/w == thr exactly, or None."""
    for x in range(x0 + 1, w + 1):
        if x / w - x0 / w == thr:
            return x
        if x / w - x0 / w > thr:
            return None
    return None


def find_boundary(thr, w):
    for x0 in range(100, w // 2):
        x = boundary_pixel(x0, thr, w)
        if x is not None:
            return x0, x
    raise SystemExit("no exact boundary pixel for %r" % thr)


def envelope(call, think="locate the target"):
    return "<think>%s</think><answer>%s</answer>" % (think, call)


cases = []


def case(name, gt, prediction, expect_acc, mode="fast", screen=SCREEN,
         raster=None, expect_fmt=None):
    got = oracle.composite(prediction, mode, gt, screen, raster)
    if got["accuracy"] != expect_acc:
        raise SystemExit("case %s: oracle accuracy %d, label %d" %
                         (name, got["accuracy"], expect_acc))
    if expect_fmt is not None and got["format"] != expect_fmt:
        raise SystemExit("case %s: oracle format %d" % (name, got["format"]))
    cases.append({
        "name": name,
        "screen": {"width": screen[0], "height": screen[1]},
        "raster": list(raster) if raster else None,
        "mode": mode,
        "gt": gt,
        "prediction": prediction,
        "expected": got,
    })


tap_x0, tap_x1 = find_boundary(oracle.TAP_RADIUS, SCREEN[0])
drag_x0, drag_x1 = find_boundary(oracle.DRAG_RADIUS, SCREEN[0])
assert oracle.dist([tap_x1 / 1000, 0.5], [tap_x0 / 1000, 0.5]) == oracle.TAP_RADIUS
assert oracle.dist([drag_x1 / 1000, 0.5], [drag_x0 / 1000, 0.5]) == oracle.DRAG_RADIUS

# Point-bearing kinds: inside / boundary / outside, both modes, bad format.
for kind, call in (("tap", "tap"), ("long_press", "long_press")):
    gt = {"kind": kind, "point": [tap_x0, 500]}
    case(kind + "/exact", gt, "%s(%d,500)" % (call, tap_x0), 2)
    case(kind + "/inside", gt, "%s(%d,530)" % (call, tap_x0 + 40), 2)
    case(kind + "/boundary", gt, "%s(%d,500)" % (call, tap_x1), 2)
    case(kind + "/outside", gt, "%s(%d,500)" % (call, tap_x1 + 1), -2)
    case(kind + "/reasoning-inside", gt,
         envelope("%s(%d,520)" % (call, tap_x0 + 10)), 2, mode="reasoning")
    case(kind + "/bad-format-missing-envelope", gt,
         "%s(%d,500)" % (call, tap_x0), -2, mode="reasoning", expect_fmt=-1)
    case(kind + "/bad-format-arity", gt, "%s(%d)" % (call, tap_x0), -2,
         expect_fmt=-1)
    case(kind + "/off-screen", gt, "%s(1001,500)" % call, -2, expect_fmt=1)

gt = {"kind": "scroll", "point": [tap_x0, 500], "direction": "up"}
case("scroll/inside", gt, "scroll(%d,500,up)" % (tap_x0 + 30), 2)
case("scroll/boundary", gt, "scroll(%d,500,up)" % tap_x1, 2)
case("scroll/outside", gt, "scroll(%d,500,up)" % (tap_x1 + 1), -2)
case("scroll/wrong-direction", gt, "scroll(%d,500,down)" % tap_x0, -2)
case("scroll/quoted-direction", gt, "scroll(%d,500,'up')" % tap_x0, 2)
case("scroll/bad-format-direction", gt, "scroll(%d,500,north)" % tap_x0, -2,
     expect_fmt=-1)
case("scroll/reasoning-wrong-order", gt,
     "<answer>scroll(%d,500,up)</answer><think>x</think>" % tap_x0, -2,
     mode="reasoning", expect_fmt=-1)

gt = {"kind": "text_input", "point": [tap_x0, 500], "text": "hello there world"}
case("text/inside-f1-0.8", gt, "text(%d,500,hello world)" % tap_x0, 2)
case("text/boundary-distance", gt,
     "text(%d,500,hello there world)" % tap_x1, 2)
case("text/outside-distance", gt,
     "text(%d,500,hello there world)" % (tap_x1 + 1), -2)
case("text/boundary-f1-0.5", {"kind": "text_input", "point": [500, 500],
                              "text": "a c"}, "text(500,500,a b)", -2)
case("text/f1-zero", gt, "text(%d,500,goodbye)" % tap_x0, -2)
case("text/commas-in-text", {"kind": "text_input", "point": [500, 500],
                             "text": "one, two, three"},
     "text(500,500,one, two, three)", 2)
case("text/reasoning", gt, envelope("text(%d,500,hello there world)" % tap_x0),
     2, mode="reasoning")
case("text/bad-format-empty", gt, "text(%d,500,)" % tap_x0, -2, expect_fmt=-1)

gt = {"kind": "drag", "point": [drag_x0, 200], "end_point": [drag_x0, 800]}
case("drag/exact", gt, "drag(%d,200,%d,800)" % (drag_x0, drag_x0), 2)
case("drag/boundary-both", gt, "drag(%d,200,%d,800)" % (drag_x1, drag_x1), 2)
case("drag/outside-start", gt,
     "drag(%d,200,%d,800)" % (drag_x1 + 1, drag_x0), -2)
case("drag/outside-end", gt,
     "drag(%d,200,%d,800)" % (drag_x0, drag_x1 + 1), -2)
case("drag/inside-mixed", gt,
     "drag(%d,230,%d,790)" % (drag_x0 + 20, drag_x0), 2)
case("drag/bad-format-arity", gt, "drag(%d,200,800)" % drag_x0, -2,
     expect_fmt=-1)
case("drag/example-start-deviation", {"kind": "drag", "point": [100, 180],
                                      "end_point": [900, 900]},
     "drag(100,100,900,900)", -2)

gt = {"kind": "call_api", "api_name": "com.example.maps", "operation": "open"}
case("call_api/match", gt, "call_api(com.example.maps,open)", 2)
case("call_api/quoted", gt, "call_api(\"com.example.maps\", 'open')", 2)
case("call_api/wrong-operation", gt, "call_api(com.example.maps,kill)", -2)
case("call_api/wrong-app", gt, "call_api(com.example.mail,open)", -2)
case("call_api/bad-format-operation", gt, "call_api(com.example.maps,close)",
     -2, expect_fmt=-1)
case("call_api/reasoning", gt, envelope("call_api(com.example.maps,open)"), 2,
     mode="reasoning")

gt = {"kind": "takeover"}
case("takeover/no-message", gt, "take_over()", 2)
case("takeover/message", gt, "take_over(please log in, then retry)", 2)
case("takeover/wrong-kind", gt, "wait()", -2)
case("takeover/bad-format", gt, "take_over", -2, expect_fmt=-1)

for kind in ("navigate_back", "navigate_home", "finish", "wait", "enter",
             "screenshot", "long_screenshot", "no_answer"):
    call = oracle.KIND_TO_CALL[kind]
    other = "enter" if kind != "enter" else "wait"
    gt = {"kind": kind}
    case(kind + "/match", gt, call + "()", 2)
    case(kind + "/match-reasoning", gt, envelope(call + "()"), 2,
         mode="reasoning")
    case(kind + "/wrong-kind", gt, oracle.KIND_TO_CALL[other] + "()", -2)
    case(kind + "/bad-format-args", gt, call + "(1)", -2, expect_fmt=-1)
    case(kind + "/bad-format-trailing", gt, call + "() extra", -2,
         expect_fmt=-1)

# Cross-kind and envelope cases.
gt = {"kind": "tap", "point": [540, 1200]}
case("tap/canonical-raster", gt, "tap(500,500)", 2, screen=(1080, 2400),
     raster=(1000, 1000))
case("tap/canonical-raster-off", gt, "tap(1000,1000)", -2, screen=(1080, 2400),
     raster=(1000, 1000))
case("tap/pixel-raster-portrait", gt, "tap(600,1300)", 2, screen=(1080, 2400))
case("tap/wrong-kind-long-press", gt, "long_press(540,1200)", -2,
     screen=(1080, 2400))
case("tap/fast-with-tags", gt, envelope("tap(540,1200)"), -2,
     screen=(1080, 2400), expect_fmt=-1)
case("tap/reasoning-repeated-tag", gt,
     "<think>a</think><think>b</think><answer>tap(540,1200)</answer>", -2,
     mode="reasoning", screen=(1080, 2400), expect_fmt=-1)
case("tap/reasoning-text-outside", gt,
     "note <think>a</think><answer>tap(540,1200)</answer>", -2,
     mode="reasoning", screen=(1080, 2400), expect_fmt=-1)
case("tap/empty", gt, "   ", -2, screen=(1080, 2400), expect_fmt=-1)
case("tap/unknown-function", gt, "click(540,1200)", -2, screen=(1080, 2400),
     expect_fmt=-1)

kinds = {c["gt"]["kind"] for c in cases}
if len(kinds) != 15 or len(cases) < 60:
    raise SystemExit("coverage: %d kinds, %d cases" % (len(kinds), len(cases)))

with open(OUT, "w") as f:
    for c in cases:
        f.write(json.dumps(c, ensure_ascii=False) + "\n")
print("wrote %d cases over %d kinds (tap boundary %d->%d, drag %d->%d)" %
      (len(cases), len(kinds), tap_x0, tap_x1, drag_x0, drag_x1),
      file=sys.stderr)

# Ten-line command-line fixture: one case per kind family, ids c00..c09.
picks = ["tap/boundary", "long_press/outside", "scroll/wrong-direction",
         "text/inside-f1-0.8", "drag/boundary-both", "call_api/quoted",
         "takeover/message", "finish/match-reasoning", "wait/bad-format-args",
         "tap/canonical-raster"]
by_name = {c["name"]: c for c in cases}
with open(os.path.join(HERE, "..", "data", "cli_reward_gt.jsonl"), "w") as g, \
        open(os.path.join(HERE, "..", "data", "cli_reward_pred.jsonl"), "w") as p, \
        open(os.path.join(HERE, "..", "data", "cli_reward_expected.jsonl"), "w") as e:
    for i, name in enumerate(picks):
        c = by_name[name]
        cid = "c%02d" % i
        g.write(json.dumps({"id": cid, "screen": c["screen"], "gt": c["gt"],
                            "mode": c["mode"]}) + "\n")
        p.write(json.dumps({"id": cid, "prediction": c["prediction"]}) + "\n")
        exp = dict(c["expected"])
        if c["raster"]:
            # The CLI applies one raster to the whole file; recompute at screen.
            s = c["screen"]
            exp = oracle.composite(c["prediction"], c["mode"], c["gt"],
                                   (s["width"], s["height"]))
        e.write(json.dumps(dict({"id": cid}, **exp)) + "\n")
