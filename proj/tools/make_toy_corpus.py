#!/usr/bin/env python3
"""Generates the bundled toy corpus (data/toy/{train,dev,test}.txt).

Each line is "style<TAB>text". Sentences are built from per-style content
lexicons; every content core is emitted in several variants that differ only
in conjunction, determiner, negation and punctuation slots.
"""

import argparse
import random
from pathlib import Path

LEXICON = {
    "scifi": {
        "subj": ["ship", "probe", "android", "captain", "reactor", "pilot", "colony", "drone",
                 "crew", "signal", "engineer", "beacon"],
        "verb": ["crossed", "scanned", "reached", "jammed", "charted", "breached", "tracked",
                 "powered", "orbited", "decoded"],
        "obj": ["nebula", "airlock", "station", "wormhole", "planet", "hull", "asteroid",
                "console", "moon", "galaxy", "portal", "satellite"],
        "adj": ["silent", "alien", "orbital", "distant", "metallic", "quantum"],
        "adv": ["quickly", "slowly", "again", "remotely"],
        "pron": ["it", "they", "we"],
    },
    "philosophy": {
        "subj": ["reason", "virtue", "doctrine", "mind", "philosopher", "duty", "argument",
                 "science", "judgment", "principle", "will", "society"],
        "verb": ["demanded", "refuted", "implied", "governed", "denied", "grounded", "defined",
                 "examined", "justified", "opposed"],
        "obj": ["truth", "freedom", "knowledge", "law", "nature", "experience", "morality",
                "existence", "belief", "custom", "happiness", "certainty"],
        "adj": ["moral", "rational", "universal", "necessary", "political", "absolute"],
        "adv": ["clearly", "merely", "certainly", "rightly"],
        "pron": ["we", "it", "you"],
    },
    "gothic": {
        "subj": ["countess", "stranger", "ghost", "monk", "widow", "servant", "raven",
                 "maiden", "baron", "shadow", "candle", "lantern"],
        "verb": ["haunted", "cursed", "guarded", "entered", "shrouded", "mourned", "buried",
                 "crept", "wept", "opened"],
        "obj": ["castle", "crypt", "chapel", "tomb", "corridor", "portrait", "abbey", "grave",
                "door", "chamber", "vault", "moor"],
        "adj": ["ancient", "pale", "gloomy", "wretched", "dreadful", "hollow"],
        "adv": ["softly", "mournfully", "twice", "alone"],
        "pron": ["she", "he", "i"],
    },
}

CONJ = {
    "scifi": ["and", "so"],
    "philosophy": ["but", "yet", "so"],
    "gothic": ["and", "but"],
}
DASH = {"scifi": ",", "philosophy": ";", "gothic": "--"}


def render(core, slots, style):
    out = []
    if slots["conj"]:
        out.append(slots["conj"])
        if slots["conj_comma"]:
            out.append(",")
    if core["pron"]:
        out.append(core["pron"])
    else:
        if slots["det1"]:
            out.append(slots["det1"])
        if core["adj"]:
            out.append(core["adj"])
        out.append(core["subj"])
    if slots["neg"]:
        out.append("never")
    out.append(core["verb"])
    if slots["det2"]:
        out.append(slots["det2"])
    out.append(core["obj"])
    if core["adv"]:
        if slots["tail_punct"]:
            out.append(DASH[style])
        out.append(core["adv"])
    out.append(".")
    return " ".join(out)


def make_core(rng, style):
    lex = LEXICON[style]
    use_pron = rng.random() < 0.2
    return {
        "pron": rng.choice(lex["pron"]) if use_pron else None,
        "subj": rng.choice(lex["subj"]),
        "adj": rng.choice(lex["adj"]) if rng.random() < 0.4 else None,
        "verb": rng.choice(lex["verb"]),
        "obj": rng.choice(lex["obj"]),
        "adv": rng.choice(lex["adv"]) if rng.random() < 0.5 else None,
    }


def base_slots(rng, style):
    return {
        "conj": rng.choice(CONJ[style]) if rng.random() < 0.4 else None,
        "conj_comma": rng.random() < 0.5,
        "det1": rng.choice(["the", "the", "a", "this"]) if rng.random() < 0.7 else None,
        "neg": rng.random() < 0.3,
        "det2": rng.choice(["the", "the", "a", "that"]) if rng.random() < 0.7 else None,
        "tail_punct": rng.random() < 0.5,
    }


def flip(rng, slots, style, core):
    s = dict(slots)
    options = ["conj", "det2", "neg"]
    if not core["pron"]:
        options.append("det1")
    if core["adv"]:
        options.append("tail_punct")
    if s["conj"]:
        options.append("conj_comma")
    key = rng.choice(options)
    if key == "conj":
        s["conj"] = None if s["conj"] else rng.choice(CONJ[style])
    elif key in ("det1", "det2"):
        s[key] = None if s[key] else "the"
    else:
        s[key] = not s[key]
    return s


def generate(rng, style, count, variants_per_core):
    seen = set()
    out = []
    while len(out) < count:
        core = make_core(rng, style)
        slots = base_slots(rng, style)
        group = [slots]
        for _ in range(variants_per_core - 1):
            group.append(flip(rng, rng.choice(group), style, core))
        for s in group:
            text = render(core, s, style)
            if text in seen or len(out) >= count:
                continue
            seen.add(text)
            out.append(text)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/toy")
    ap.add_argument("--seed", type=int, default=20)
    ap.add_argument("--train", type=int, default=50)
    ap.add_argument("--dev", type=int, default=5)
    ap.add_argument("--test", type=int, default=10)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    splits = {"train": (args.train, 3), "dev": (args.dev, 1), "test": (args.test, 1)}
    for split, (n, variants) in splits.items():
        lines = []
        for style in LEXICON:
            for text in generate(rng, style, n, variants):
                lines.append(f"{style}\t{text}")
        (out / f"{split}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
