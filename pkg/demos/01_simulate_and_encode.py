"""Walkthrough: one-counter machines, runs, and the doubled-alphabet encoding.

Builds the four-state machine for { a^n b^n a : n > 0 }, runs a few words
while watching the counter, and shows how the counter's zero/positive
mode turns a word into its encoded form, whose language is an ordinary
regular language over the doubled alphabet.
"""

from ocalearn import Droca, pretty_encoded

machine = Droca(
    states=["q0", "q1", "q2", "q3"],
    alphabet=["a", "b"],
    initial="q0",
    delta0={("q0", "a"): ("q0", 1), ("q0", "b"): ("q3", 1),
            ("q1", "a"): ("q2", 0), ("q1", "b"): ("q3", 1),
            ("q2", "a"): ("q3", 1), ("q2", "b"): ("q3", 1),
            ("q3", "a"): ("q3", 1), ("q3", "b"): ("q3", 1)},
    delta1={("q0", "a"): ("q0", 1), ("q0", "b"): ("q1", -1),
            ("q1", "a"): ("q3", 1), ("q1", "b"): ("q1", -1),
            ("q2", "a"): ("q3", 1), ("q2", "b"): ("q3", 1),
            ("q3", "a"): ("q3", 1), ("q3", "b"): ("q3", 1)},
    finals=["q2"])

print("machine:", machine)
print("language: { a^n b^n a : n > 0 }")
print()

for word in ["aba", "aabba", "ab", "aab", "ba", ""]:
    trace = machine.run(word)
    steps = " ".join(f"({c.state},{c.counter})" for c in trace.configs)
    verdict = "accepted" if trace.accepted else "rejected"
    print(f"{word or 'ε':>6}: {steps:<50} {verdict}")
    print(f"        counter effect {trace.counter_effect}, height {trace.height}, "
          f"encoded {pretty_encoded(machine.encode(word))}")

print()
print("characteristic DFA (counter erased, letters tagged with the counter sign):")
dfa = machine.characteristic_dfa()
for state in dfa.states:
    outgoing = ", ".join(f"{sym}->{dfa.transition[(state, sym)]}"
                         for sym in dfa.alphabet)
    marker = "*" if state in dfa.finals else " "
    print(f"  {marker}{state}: {outgoing}")
print()
print("the DFA accepts exactly the encodings of accepted words, e.g.")
for word in ["aba", "aabba", "ab"]:
    enc = machine.encode(word)
    print(f"  {pretty_encoded(enc)}: dfa {'accepts' if dfa.accepts(enc) else 'rejects'},"
          f" machine {'accepts' if machine.accepts(word) else 'rejects'}")
