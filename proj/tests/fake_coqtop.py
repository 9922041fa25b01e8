#!/usr/bin/env python3
# Scripted stand-in for a Coq top level, speaking the -emacs prompt protocol.
# Tactics: ok* passes, split opens a goal, done closes one, hang sleeps,
# crash exits; anything else is an unknown reference.
import os
import sys
import time

PROMPT = "<prompt>Coq < 1 || 0 < </prompt>"

if "--version" in sys.argv:
    if os.environ.get("FAKE_COQ_VERSION_FAIL"):
        sys.exit(1)
    print("The Fake Coq Proof Assistant, version 0.0")
    sys.exit(0)


def reply(text):
    if text:
        sys.stdout.write(text + "\n")
    sys.stdout.write(PROMPT)
    sys.stdout.flush()


open_proof = False
goals = 0
reply("Welcome")
for raw in sys.stdin:
    line = raw.strip()
    if line == "Require Import Missing.":
        reply("Error: Cannot find a physical path bound to logical path Missing.")
    elif line == "Abort All.":
        if open_proof:
            open_proof, goals = False, 0
            reply("")
        else:
            reply("Error: No focused proof (No proof-editing in progress).")
    elif line.startswith(("Theorem", "Lemma")):
        if "BAD" in line:
            reply("Toplevel input, characters 0-5:\nError: Syntax error.")
        else:
            open_proof, goals = True, 1
            reply("1 subgoal")
    elif line.startswith(("Inductive", "Definition", "Fixpoint", "Require")):
        reply("defined")
    elif line == "Proof.":
        reply("")
    elif line == "Qed.":
        if open_proof and goals == 0:
            open_proof = False
            reply("thm is defined")
        else:
            reply("Error: Attempt to save an incomplete proof")
    elif open_proof and goals == 0:
        reply("Error: No such unproven subgoal.")
    elif line == "intros." or line.startswith("ok"):
        reply("%d subgoal(s)" % goals)
    elif line == "split.":
        goals += 1
        reply("%d subgoals" % goals)
    elif line == "done.":
        goals -= 1
        reply("No more subgoals." if goals == 0 else "%d subgoal(s)" % goals)
    elif line == "hang.":
        time.sleep(30)
        reply("")
    elif line == "crash.":
        sys.exit(3)
    else:
        reply("Error: The reference %s was not found in the current environment." % line.rstrip("."))
