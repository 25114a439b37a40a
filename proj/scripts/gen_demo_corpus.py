#!/usr/bin/env python3
"""Generate the demo corpus under data/ and its expected-values fixture.

The corpus is defined as a slot model: each slot is one word box shared by
the GT and OCR variants of a page (None on one side models dropped/spurious
words). From the same model this script derives, independently of the C++
implementation (Python unicodedata, its own Levenshtein/region logic):

  - hOCR files for GT and OCR pages, region-annotation JSON, manifest,
    pipeline config, confusion table, region taxonomy, demo lexicon;
  - tests/data/demo_expected.json with per-scope character statistics,
    raw and post-processed CER/WER numerators and denominators, the
    expected correction ledger, and OCR dictionary accuracies.

Usage: python3 scripts/gen_demo_corpus.py [repo-root]
"""

import json
import os
import sys
import unicodedata

NFC = lambda s: unicodedata.normalize("NFC", s)

GREEK_BLOCKS = [(0x0370, 0x03FF), (0x1F00, 0x1FFF)]
LATIN_BLOCKS = [(0x0000, 0x024F), (0x1E00, 0x1EFF)]


def is_letter(c):
    return unicodedata.category(c).startswith("L")


def script_of(c):
    cp = ord(c)
    if is_letter(c) and any(lo <= cp <= hi for lo, hi in GREEK_BLOCKS):
        return "greek"
    if is_letter(c) and any(lo <= cp <= hi for lo, hi in LATIN_BLOCKS):
        return "latin"
    if "0" <= c <= "9":
        return "digit"
    return "other"


def lower_simple(s):
    out = []
    for c in s:
        lo = c.lower()
        out.append(lo if len(lo) == 1 else c)
    return "".join(out)


def levenshtein(a, b):
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        cur = [i + 1]
        for j, cb in enumerate(b):
            cur.append(min(prev[j] + (ca != cb), prev[j + 1] + 1, cur[j] + 1))
        prev = cur
    return prev[len(b)]


# ---------------------------------------------------------------------------
# Corpus model

CHAR_W = 14
WORD_H = 22


class Slot:
    def __init__(self, gt, ocr="=", x=None):
        self.gt = NFC(gt) if gt is not None else None
        self.ocr = self.gt if ocr == "=" else (NFC(ocr) if ocr is not None else None)
        self.x = x
        self.bbox = None


class LineSpec:
    def __init__(self, y, slots):
        self.y = y
        self.slots = slots


class RegionSpec:
    def __init__(self, label, rect, lines):
        self.label = label
        self.rect = rect  # (x0, y0, x1, y1); None for rows outside every rect
        self.lines = lines


PAGE_W, PAGE_H = 800, 1000

# Commentary "alpha", page 1: Greek primary text with a marginal line-number
# column nested inside the primary rectangle, a commentary with a hyphen
# break (marginal number interceding), an apparatus with a dropped and a
# spurious word.
ALPHA_P1 = [
    RegionSpec("title", (50, 40, 750, 80), [
        LineSpec(50, [Slot("ΣΟΦΟΚΛΕΟΥΣ"), Slot("ΑΙΑΣ")]),
    ]),
    RegionSpec("primary_text", (50, 100, 750, 225), [
        LineSpec(110, [Slot("μῆνιν"), Slot("ἄειδε"), Slot("θεὰ", "θεά"), Slot("5", x=670)]),
        LineSpec(150, [Slot("οὐλομένην"), Slot("ἣ"), Slot("μυρία", "μυρίαν")]),
        LineSpec(190, [Slot("ἄλγεα", "ἄλγξα"), Slot("θῆκεν"), Slot("15", x=670)]),
    ]),
    # Nested inside primary_text; smaller area wins the number words.
    RegionSpec("line_number", (660, 105, 740, 220), []),
    RegionSpec("commentary", (50, 240, 750, 360), [
        LineSpec(250, [Slot("τὸν"), Slot("δὲ"), Slot("τοξότην", "τοξό-")]),
        LineSpec(290, [Slot("25"), Slot(None, "την"), Slot("λόγος", "λόγσς"), Slot("ἔχει")]),
        LineSpec(330, [Slot("ἄνθρωπος", "άνθρωπος"), Slot("γὰρ"), Slot("historiam", "histonam"),
                       Slot("scripsit")]),
    ]),
    RegionSpec("app_crit", (50, 440, 750, 520), [
        LineSpec(450, [Slot("ἄειδε]"), Slot("ᾄδε"), Slot("L", None), Slot("ms."),
                       Slot(None, "ι.")]),
    ]),
    RegionSpec("page_number", (350, 940, 450, 985), [
        LineSpec(950, [Slot("42", x=360)]),
    ]),
]

# Commentary "alpha", page 2: Latin preface/translation with a hyphen break,
# a footnote mixing scripts, an index.
ALPHA_P2 = [
    RegionSpec("preface", (50, 40, 750, 100), [
        LineSpec(50, [Slot("Praefatio"), Slot("editoris")]),
    ]),
    RegionSpec("translation", (50, 140, 750, 240), [
        LineSpec(150, [Slot("Sing"), Slot("goddess", "gocldess"), Slot("the"),
                       Slot("wrath", "wr-")]),
        LineSpec(190, [Slot(None, "ath"), Slot("of"), Slot("Achilles"), Slot("son")]),
    ]),
    RegionSpec("footnote", (50, 260, 750, 330), [
        LineSpec(270, [Slot("1"), Slot("Cf."), Slot("σχόλια"), Slot("νέα", "υέα"),
                       Slot("vetera")]),
    ]),
    RegionSpec("index", (50, 360, 750, 430), [
        LineSpec(370, [Slot("Αἴας"), Slot("12"), Slot("Ἕκτωρ", "Ἑκτωρ"), Slot("9")]),
    ]),
    RegionSpec("page_number", (350, 940, 450, 985), [
        LineSpec(950, [Slot("43", x=360)]),
    ]),
]

# Commentary "beta": German front matter, structured texts, a short primary
# passage, and one row outside every rectangle.
BETA_P1 = [
    RegionSpec("introduction", (50, 40, 750, 140), [
        LineSpec(50, [Slot("Einleitung", "Einleitnng"), Slot("zur"), Slot("Ausgabe")]),
        LineSpec(90, [Slot("des"), Slot("Sophokles")]),
    ]),
    RegionSpec("table_of_contents", (50, 160, 750, 220), [
        LineSpec(170, [Slot("Inhalt"), Slot("1")]),
    ]),
    RegionSpec("appendix", (50, 240, 750, 300), [
        LineSpec(250, [Slot("Anhang"), Slot("κριτικός")]),
    ]),
    RegionSpec("bibliography", (50, 320, 750, 380), [
        LineSpec(330, [Slot("Hermann"), Slot("1851")]),
    ]),
    RegionSpec("primary_text", (50, 400, 750, 480), [
        LineSpec(410, [Slot("ὦ"), Slot("φίλοι"), Slot("ναῦται", "υαῦται")]),
    ]),
    RegionSpec("page_number", (350, 940, 450, 985), [
        LineSpec(950, [Slot("7", x=360)]),
    ]),
    RegionSpec(None, None, [  # outside every annotation rectangle
        LineSpec(700, [Slot("nota")]),
    ]),
]

CORPUS = {
    "alpha": {"language": "grc-lat", "pages": {"alpha_p1": ALPHA_P1, "alpha_p2": ALPHA_P2}},
    "beta": {"language": "grc-ger", "pages": {"beta_p1": BETA_P1}},
}

TAXONOMY = {
    "primary_text": "greek_texts",
    "commentary": "commentary_like",
    "footnote": "commentary_like",
    "introduction": "low_greek_texts",
    "preface": "low_greek_texts",
    "translation": "low_greek_texts",
    "app_crit": "critical_apparatus",
    "appendix": "structured_texts",
    "bibliography": "structured_texts",
    "index": "structured_texts",
    "title": "structured_texts",
    "table_of_contents": "structured_texts",
    "page_number": "numbers",
    "line_number": "numbers",
}

CONFUSION_PAIRS = [("ν", "υ"), ("σ", "ο"), ("ά", "ὰ"), ("έ", "ὲ"), ("ή", "ὴ"),
                   ("ί", "ὶ"), ("ό", "ὸ"), ("ύ", "ὺ"), ("ώ", "ὼ"), ("β", "ϐ")]

LEXICON = [
    # Every correct Greek word of the demo ground truth.
    "μῆνιν", "ἄειδε", "θεὰ", "οὐλομένην", "μυρία", "ἄλγεα", "θῆκεν",
    "τὸν", "δὲ", "τοξότην", "λόγος", "ἔχει", "ἄνθρωπος", "γὰρ", "ᾄδε",
    "σχόλια", "νέα", "αἴας", "ἕκτωρ", "κριτικός", "ὦ", "φίλοι", "ναῦται",
    "σοφοκλέους",
    # An ambiguous de-accenting group: excluded from the unique-accent index.
    "ἤ", "ἥ", "ἦ", "ἣ",
    # Filler vocabulary, including several exactly-five-letter words.
    "καί", "τε", "ἐν", "εἰς", "ἐπί", "γῆ", "θεός", "θεοί", "ἀνήρ", "πόλις",
    "πόλεμος", "δῆμος", "νίκη", "δίκη", "ψυχή", "σῶμα", "ἔργον", "ἔπος",
    "μῦθος", "νόος", "θυμός", "κύων", "ἵππος", "ναῦς", "θάλασσα", "οὐρανός",
    "ἥλιος", "σελήνη", "ἄστρον", "ποταμός", "ὄρος", "δένδρον", "καρπός",
    "οἶνος", "ὕδωρ", "πῦρ", "φῶς", "νύξ", "ἡμέρα", "χρόνος", "βίος",
    "θάνατος", "ὕπνος", "ὄνειρος", "ἐλπίς", "φόβος", "χαρά", "λύπη", "ἔρως",
    "φιλία", "σοφία", "ἀρετή", "κακία", "ἀλήθεια", "ψεῦδος", "ξένος",
    "δῶρον", "αἷμα", "ὕβρις", "τέχνη", "μοῖρα",
]

HYPHENS = "-‐­⸗"


# ---------------------------------------------------------------------------
# Layout

def layout(page_spec):
    """Assigns slot bboxes; GT and OCR share geometry."""
    for region in page_spec:
        for line in region.lines:
            x = (region.rect[0] if region.rect else 50) + 10
            for slot in line.slots:
                if slot.x is not None:
                    x = slot.x
                width = CHAR_W * max(len(slot.gt or ""), len(slot.ocr or ""), 1)
                slot.bbox = (x, line.y, x + width, line.y + WORD_H)
                x += width + 10


def hocr(page_id, page_spec, side):
    lines_out = []
    all_lines = []
    for region in page_spec:
        for line in region.lines:
            words = [(getattr(s, side), s.bbox) for s in line.slots if getattr(s, side)]
            if words:
                all_lines.append((line.y, words))
    all_lines.sort(key=lambda t: t[0])
    for y, words in all_lines:
        bx0 = min(b[0] for _, b in words)
        by0 = min(b[1] for _, b in words)
        bx1 = max(b[2] for _, b in words)
        by1 = max(b[3] for _, b in words)
        spans = []
        for text, (x0, y0, x1, y1) in words:
            conf = "; x_wconf 91" if side == "ocr" else ""
            escaped = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            spans.append(f"      <span class='ocrx_word' title='bbox {x0} {y0} {x1} {y1}"
                         f"{conf}'>{escaped}</span>")
        lines_out.append(f"    <span class='ocr_line' title='bbox {bx0} {by0} {bx1} {by1}'>\n"
                         + "\n".join(spans) + "\n    </span>")
    body = "\n".join(lines_out)
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<html>
 <head>
  <meta charset="utf-8"/>
  <title></title>
 </head>
 <body>
  <div class='ocr_page' id='{page_id}' title='bbox 0 0 {PAGE_W} {PAGE_H}'>
{body}
  </div>
 </body>
</html>
"""


def annotations(page_spec):
    out = []
    for region in page_spec:
        if region.rect is None:
            continue
        x0, y0, x1, y1 = region.rect
        out.append({"label": region.label, "x": x0, "y": y0,
                    "width": x1 - x0, "height": y1 - y0})
    return out


# ---------------------------------------------------------------------------
# Expected values (independent of the C++ implementation)

def rect_area(r):
    return (r[2] - r[0]) * (r[3] - r[1])


def region_of_bbox(bbox, page_spec):
    """Smallest annotation rectangle containing the bbox center."""
    cx, cy = (bbox[0] + bbox[2]) / 2.0, (bbox[1] + bbox[3]) / 2.0
    best = None
    for region in page_spec:
        if region.rect is None:
            continue
        x0, y0, x1, y1 = region.rect
        if x0 <= cx <= x1 and y0 <= cy <= y1:
            if best is None or rect_area(region.rect) < rect_area(best.rect):
                best = region
    return best.label if best else "unassigned"


def scope_of(label):
    return TAXONOMY.get(label, "unassigned")


def text_stats(text, tally):
    for c in text:
        s = script_of(c)
        if s == "greek":
            tally["greek_letters"] += 1
            tally["char_count"] += 1
        elif s == "latin":
            tally["latin_letters"] += 1
            tally["char_count"] += 1
        elif s == "digit":
            tally["char_count"] += 1


def new_tally():
    return {"char_count": 0, "greek_letters": 0, "latin_letters": 0,
            "gt_chars": 0, "gt_words": 0,
            "cer_numerator": 0, "wer_numerator": 0}


def add_scopes(tallies, scope, fn):
    for key in (scope, "global"):
        fn(tallies.setdefault(key, new_tally()))


def dehyphenated_ocr(page_spec):
    """Expected OCR word list after dehyphenation, per region in line order:
    merges a line-final hyphen fragment (marginal numbers may intercede) with
    the next line's first non-marginal word. Returns {region label: [(text,
    bbox, line_y)]} plus the correction ledger."""
    corrections = []
    regions = {}
    for region in page_spec:
        lines = []
        for line in sorted(region.lines, key=lambda l: l.y):
            words = [[s.ocr, s.bbox] for s in line.slots if s.ocr]
            if words:
                lines.append(words)
        if not lines:
            continue

        def is_marginal(words, idx):
            if idx != 0 and idx != len(words) - 1:
                return False
            t = words[idx][0]
            t = t[:-1] if t.endswith(".") else t
            return bool(t) and all("0" <= c <= "9" for c in t)

        li = 0
        while li < len(lines):
            line = lines[li]
            while line:
                last = len(line) - 1
                if is_marginal(line, last):
                    if last == 0:
                        break
                    last -= 1
                if not line[last][0] or line[last][0][-1] not in HYPHENS:
                    break
                nxt = next((l for l in lines[li + 1:] if l), None)
                cont = None
                if nxt:
                    for wi in range(len(nxt)):
                        if not is_marginal(nxt, wi):
                            cont = wi
                            break
                if cont is None:
                    break
                fragment = nxt.pop(cont)
                joined = line[last][0].rstrip(HYPHENS) + fragment[0]
                corrections.append({"original": line[last][0] + " " + fragment[0],
                                    "corrected": joined, "rule": "dehyphenation"})
                line[last][0] = joined
            li += 1
        regions[region.label or "unassigned"] = [
            (w[0], tuple(w[1])) for line in lines for w in line if w]
    return regions, corrections


def spellchecked(word, lex_folded, unique_index, corrections):
    """Expected effect of the two spellchecks on one OCR word."""
    # Greek-word guard.
    letters = [c for c in word if is_letter(c)]
    greek = sum(script_of(c) == "greek" for c in letters)
    if not letters or greek / len(letters) <= 0.5:
        return word
    core = word
    while core and not is_letter(core[0]):
        core = core[1:]
    end = len(core)
    while end > 0 and not is_letter(core[end - 1]):
        end -= 1
    while end < len(core) and unicodedata.combining(core[end]):
        end += 1
    prefix_len = len(word) - len(core)
    suffix = core[end:]
    core = core[:end]
    if not core:
        return word

    def strip_diacritics(s):
        out = []
        for ch in s:
            if script_of(ch) == "greek":
                nfd = unicodedata.normalize("NFD", ch)
                out.append(nfd[0])
            else:
                out.append(ch)
        return NFC("".join(out))

    fixed = core
    # Spellcheck 1: unique accent configuration, more than five letters.
    if sum(1 for c in fixed if is_letter(c)) >= 6:
        hit = unique_index.get(strip_diacritics(fixed))
        if hit and hit != fixed:
            corrections.append({"original": word, "corrected":
                                word[:prefix_len] + hit + suffix, "rule": "unique-accent"})
            fixed = hit
    # Spellcheck 2: one confusion-pair substitution.
    if lower_simple(fixed) not in lex_folded:
        done = False
        for a, b in CONFUSION_PAIRS:
            if done:
                break
            for pos in range(len(fixed)):
                if done:
                    break
                for frm, to in ((a, b), (b, a)):
                    if fixed[pos:pos + len(frm)] == frm:
                        cand = NFC(fixed[:pos] + to + fixed[pos + len(frm):])
                        if lower_simple(cand) in lex_folded:
                            corrections.append({"original": word[:prefix_len] + fixed + suffix,
                                                "corrected": word[:prefix_len] + cand + suffix,
                                                "rule": "confusion-pair"})
                            fixed = cand
                            done = True
                            break
    return word[:prefix_len] + fixed + suffix


def compute_expected():
    lex_folded = {lower_simple(NFC(w)) for w in LEXICON}
    groups = {}
    for w in sorted(lex_folded):
        skeleton = []
        for ch in w:
            if script_of(ch) == "greek":
                skeleton.append(unicodedata.normalize("NFD", ch)[0])
            else:
                skeleton.append(ch)
        groups.setdefault(NFC("".join(skeleton)), []).append(w)
    unique_index = {k: v[0] for k, v in groups.items() if len(v) == 1}

    expected = {"per_commentary": {}, "overall": {}, "raw": {}, "post": {},
                "corrections": [], "dictionary_accuracy": {}}
    overall = {}
    raw_overall = {}
    post_overall = {}

    for cid, commentary in CORPUS.items():
        stats = {}
        raw = {}
        post = {}
        dict_tokens = 0
        dict_hits = 0
        for page_id, page_spec in commentary["pages"].items():
            layout(page_spec)
            # --- GT statistics ------------------------------------------------
            for region in page_spec:
                for line in region.lines:
                    for slot in line.slots:
                        if slot.gt is None:
                            continue
                        scope = scope_of(region_of_bbox(slot.bbox, page_spec))
                        for tallies in (stats, overall):
                            add_scopes(tallies, scope, lambda t, s=slot: (
                                text_stats(s.gt, t),
                                t.__setitem__("gt_chars", t["gt_chars"] + len(s.gt)),
                                t.__setitem__("gt_words", t["gt_words"] + 1)))

            # --- raw evaluation ----------------------------------------------
            for region in page_spec:
                for line in region.lines:
                    for slot in line.slots:
                        gt_scope = (scope_of(region_of_bbox(slot.bbox, page_spec))
                                    if slot.gt is not None else None)
                        ocr_scope = (scope_of(region_of_bbox(slot.bbox, page_spec))
                                     if slot.ocr is not None else None)
                        if slot.gt is not None and slot.ocr is not None:
                            d = levenshtein(slot.gt, slot.ocr)
                            mism = slot.gt != slot.ocr
                            for tallies in (raw, raw_overall):
                                add_scopes(tallies, gt_scope, lambda t, d=d, m=mism: (
                                    t.__setitem__("cer_numerator", t["cer_numerator"] + d),
                                    t.__setitem__("wer_numerator", t["wer_numerator"] + m)))
                        elif slot.gt is not None:
                            for tallies in (raw, raw_overall):
                                add_scopes(tallies, gt_scope, lambda t, s=slot: (
                                    t.__setitem__("cer_numerator",
                                                  t["cer_numerator"] + len(s.gt)),
                                    t.__setitem__("wer_numerator", t["wer_numerator"] + 1)))
                        elif slot.ocr is not None:
                            for tallies in (raw, raw_overall):
                                for key in ("global", ocr_scope):
                                    t = tallies.setdefault(key, new_tally())
                                    t["cer_numerator"] += len(slot.ocr)
                                    t["wer_numerator"] += 1

            # --- post-processed evaluation ------------------------------------
            merged, dh_corr = dehyphenated_ocr(page_spec)
            for c in dh_corr:
                c["page"] = page_id
                expected["corrections"].append(c)
            gt_by_bbox = {}
            for region in page_spec:
                for line in region.lines:
                    for slot in line.slots:
                        if slot.gt is not None:
                            gt_by_bbox[slot.bbox] = slot.gt
            seen_gt = set()
            sp_corr = []
            for label, words in merged.items():
                for text, bbox in words:
                    fixed = spellchecked(text, lex_folded, unique_index, sp_corr)
                    scope = scope_of(region_of_bbox(bbox, page_spec))
                    if bbox in gt_by_bbox:
                        seen_gt.add(bbox)
                        gt_text = gt_by_bbox[bbox]
                        d = levenshtein(gt_text, fixed)
                        gt_scope = scope
                        for tallies in (post, post_overall):
                            add_scopes(tallies, gt_scope, lambda t, d=d, m=(gt_text != fixed): (
                                t.__setitem__("cer_numerator", t["cer_numerator"] + d),
                                t.__setitem__("wer_numerator", t["wer_numerator"] + m)))
                    else:
                        for tallies in (post, post_overall):
                            for key in ("global", scope):
                                t = tallies.setdefault(key, new_tally())
                                t["cer_numerator"] += len(fixed)
                                t["wer_numerator"] += 1
            for c in sp_corr:
                c["page"] = page_id
                expected["corrections"].append(c)
            for bbox, gt_text in gt_by_bbox.items():
                if bbox not in seen_gt:
                    scope = scope_of(region_of_bbox(bbox, page_spec))
                    for tallies in (post, post_overall):
                        add_scopes(tallies, scope, lambda t, s=gt_text: (
                            t.__setitem__("cer_numerator", t["cer_numerator"] + len(s)),
                            t.__setitem__("wer_numerator", t["wer_numerator"] + 1)))

            # --- dictionary accuracy over raw OCR Greek tokens -----------------
            for region in page_spec:
                for line in region.lines:
                    for slot in line.slots:
                        if slot.ocr is None:
                            continue
                        tok = slot.ocr
                        while tok and not is_letter(tok[0]):
                            tok = tok[1:]
                        end = len(tok)
                        while end > 0 and not is_letter(tok[end - 1]):
                            end -= 1
                        while end < len(tok) and unicodedata.combining(tok[end]):
                            end += 1
                        tok = tok[:end]
                        if not tok:
                            continue
                        letters = [c for c in tok if is_letter(c)]
                        greek = sum(script_of(c) == "greek" for c in letters)
                        if not letters or greek / len(letters) <= 0.5:
                            continue
                        dict_tokens += 1
                        dict_hits += lower_simple(tok) in lex_folded

        expected["per_commentary"][cid] = stats
        expected["raw"][cid] = raw
        expected["post"][cid] = post
        expected["dictionary_accuracy"][cid] = {
            "hits": dict_hits, "tokens": dict_tokens,
            "value": dict_hits / dict_tokens if dict_tokens else 0.0}

    expected["overall"] = overall
    expected["raw"]["overall"] = raw_overall
    expected["post"]["overall"] = post_overall
    return expected


# ---------------------------------------------------------------------------

def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..")

    def write(path, content):
        path = os.path.join(root, path)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)

    for cid, commentary in CORPUS.items():
        for page_id, page_spec in commentary["pages"].items():
            layout(page_spec)
            write(f"data/demo/{cid}/gt/{page_id}.html", hocr(page_id, page_spec, "gt"))
            write(f"data/demo/{cid}/ocr/{page_id}.html", hocr(page_id, page_spec, "ocr"))
            write(f"data/demo/{cid}/annotations/{page_id}.json",
                  json.dumps(annotations(page_spec), ensure_ascii=False, indent=2) + "\n")

    write("data/lexicon/greek_demo.txt",
          "# Demo wordlist: one word per line, UTF-8, NFC.\n" +
          "\n".join(NFC(w) for w in LEXICON) + "\n")

    write("data/config/region_types.json",
          json.dumps({"types": TAXONOMY}, ensure_ascii=False, indent=2, sort_keys=True) + "\n")

    write("data/config/confusion_pairs.tsv",
          "# Commonly confused characters, one unordered pair per line (priority order).\n"
          "# Sides may be 1-2 NFC codepoints. Non-normative defaults; edit freely.\n" +
          "\n".join(f"{a}\t{b}" for a, b in CONFUSION_PAIRS) + "\n")

    write("data/config/pipeline.json", json.dumps({
        "stages": ["dehyphenation", "unique-accent", "confusion-pair"],
        "hyphens": ["-", "‐", "­", "⸗"],
        "min_letters_unique_accent": 6,
        "confusion_mode": "occurrence",
        "greek_word_threshold": 0.5,
        "confusion_table": "confusion_pairs.tsv",
    }, ensure_ascii=False, indent=2) + "\n")

    write("data/demo/manifest.json", json.dumps({
        "commentaries": [
            {"id": "alpha", "gt_dir": "alpha/gt", "ocr_dir": "alpha/ocr",
             "annotations_dir": "alpha/annotations", "language": "grc-lat"},
            {"id": "beta", "gt_dir": "beta/gt", "ocr_dir": "beta/ocr",
             "annotations_dir": "beta/annotations", "language": "grc-ger"},
        ],
        "lexicon": "../lexicon/greek_demo.txt",
        "region_taxonomy": "../config/region_types.json",
        "pipeline_config": "../config/pipeline.json",
        "output_dir": "out/demo",
        "dictionary": {"greek_only": True},
    }, ensure_ascii=False, indent=2) + "\n")

    expected = compute_expected()
    write("tests/data/demo_expected.json",
          json.dumps(expected, ensure_ascii=False, indent=1, sort_keys=True) + "\n")

    g = expected["overall"]["global"]
    print(f"demo corpus: global chars {g['char_count']}, gt_chars {g['gt_chars']}, "
          f"words {g['gt_words']}")
    print(f"raw global CER numerator: {expected['raw']['overall']['global']['cer_numerator']}")
    print(f"post global CER numerator: {expected['post']['overall']['global']['cer_numerator']}")
    print(f"corrections: {len(expected['corrections'])}")
    for c in expected["corrections"]:
        print("  ", c["page"], c["rule"], c["original"], "->", c["corrected"])
    for cid, acc in expected["dictionary_accuracy"].items():
        print(f"dictionary accuracy {cid}: {acc['hits']}/{acc['tokens']} = {acc['value']:.3f}")


if __name__ == "__main__":
    main()
