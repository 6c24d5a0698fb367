"""Coarse part-of-speech tagging for the caption gate.

The only decision the pipeline needs is "is this word a verb?", asked of
the third word of a caption-shaped paragraph.  A bundled lexicon of common
verb stems plus -s/-es/-ed/-ing morphology answers it deterministically;
anything heavier can be plugged in through the PosTagger protocol.
"""

from __future__ import annotations

import re
from typing import Protocol

VERB = "VERB"
NOUN = "NOUN"
NUM = "NUM"
OTHER = "OTHER"


class PosTagger(Protocol):
    def tag(self, word: str, position: int) -> str:
        """Coarse tag for ``word`` at 1-based ``position`` in its sentence."""
        ...


_STRIP_RE = re.compile(r"^\W+|\W+$", re.UNICODE)
_NUM_RE = re.compile(r"^\d+([.,:]\d+)*$")


class LexiconTagger:
    """Lexicon + morphology tagger.

    Position-aware: a capitalized word past position 1 reads as a proper
    noun before the lexicon is consulted, so caption openers like
    "Architecture" or "Results" never pass as verbs while running text like
    "shows" still does.
    """

    def __init__(self, verbs: frozenset[str] | None = None):
        self.verbs = verbs if verbs is not None else VERB_STEMS

    def tag(self, word: str, position: int) -> str:
        stripped = _STRIP_RE.sub("", word)
        if not stripped:
            return OTHER
        if _NUM_RE.match(stripped):
            return NUM
        if position > 1 and stripped[0].isupper():
            return NOUN
        if self._is_verb(stripped.lower()):
            return VERB
        return OTHER

    def _is_verb(self, w: str) -> bool:
        verbs = self.verbs
        if w in verbs:
            return True
        for suffix, restores in _MORPH:
            if not w.endswith(suffix) or len(w) <= len(suffix) + 1:
                continue
            stem = w[: -len(suffix)]
            for restore in restores:
                if restore(stem) in verbs:
                    return True
        return False


# suffix -> candidate stem restorations, tried in order
_MORPH = [
    ("ies", [lambda s: s + "y"]),                       # studies -> study
    ("es", [lambda s: s, lambda s: s + "e"]),           # passes, makes
    ("s", [lambda s: s]),                               # shows
    ("ied", [lambda s: s + "y"]),                       # applied -> apply
    ("ed", [lambda s: s, lambda s: s + "e",             # listed, described
            lambda s: s[:-1] if s and s[-1:] == s[-2:-1] else s]),  # planned
    ("ing", [lambda s: s, lambda s: s + "e",            # showing, making
             lambda s: s[:-1] if s and s[-1:] == s[-2:-1] else s]),  # running
]


# Common verb stems: core English plus the verbs of expository prose.
VERB_STEMS = frozenset("""
accept access accompany account achieve acquire act adapt add address adjust
admit adopt advance affect agree aid aim align allocate allow alter analyze
analyse announce answer appear append apply approach approximate argue arise
arrange arrive ask assemble assert assess assign assist associate assume
attach attain attempt attend attribute augment average avoid base be bear
beat become begin behave believe belong benchmark bend benefit bias bind
block boost borrow bound break bring build burn buy cache calculate calibrate
call cancel capture carry cast categorize cause cease center chain challenge
change characterize charge check choose cite claim clarify classify clean
clear climb close cluster collapse collect combine come comment communicate
compare compensate compete compile complete complicate compose compress
comprise compute concatenate concern conclude condition conduct configure
confirm conflict conform connect consider consist consolidate constitute
constrain construct consume contain continue contract contrast contribute
control converge convert convey copy correct correlate correspond cost count
cover create cross cut deal debug decay decide declare decline decode
decompose decrease dedicate deem define degrade delay delegate delete
deliver demonstrate denote depend depict deploy derive describe deserve
design detail detect determine develop deviate devise differ differentiate
diminish direct disable disagree disappear discard discover discuss display
distinguish distribute diverge divide do document dominate double download
draw drive drop duplicate ease eat edit elaborate eliminate embed emerge
emit emphasize employ enable enclose encode encounter encourage end enforce
enhance enjoy enlarge enrich ensure entail enter enumerate equal equip
establish estimate evaluate evolve examine exceed exchange exclude execute
exhibit exist expand expect experiment explain exploit explore export expose
express extend extract facilitate fail fall fault favor feed fetch fill
filter find finish fit fix flow focus follow force forget form formalize
formulate forward find freeze function gain gather generalize generate get
give go govern grant group grow guarantee guard guess guide halt handle
happen harm have help hide highlight hold hope identify ignore illustrate
imagine imitate impact implement imply import impose improve include
incorporate increase incur indicate induce infer influence inform inherit
initialize initiate inject input insert inspect install instantiate
integrate intend interact interleave interpolate interpret interrupt
intersect introduce invert invest investigate invoke involve isolate issue
iterate join judge jump justify keep know label lack last launch lead leak
learn leave lend let lie lift limit link list live load locate lock log look
lose maintain make manage manipulate map mark match materialize matter
maximize mean measure meet merge migrate minimize mismatch miss mitigate mix
model modify monitor motivate move multiply name navigate need neglect
normalize note notice notify observe obtain occupy occur offer offset omit
open operate optimize order organize originate outline output outperform
overcome overlap override owe own pack pad parse partition pass penalize
perform permit persist pick place plan play plot point populate pose
position possess postpone precede predict prefer prepare preprocess present
preserve prevent print prioritize process produce profile project promote
propagate propose protect prove provide prune publish pull purchase pursue
push put qualify quantify query queue quote raise randomize range rank reach
read realize rearrange reason recall receive recognize recommend recompute
reconstruct record recover recur reduce refer refine reflect refresh regard
register regress relate relax release rely remain remark remember remove
rename render repeat replace replicate report represent reproduce request
require rerun resample reschedule reset reside resize resolve respect
respond restart restore restrict result resume retain retrain retrieve
return reuse reveal reverse revert review revise rewrite rise rotate round
run sample satisfy save say scale scan schedule score search see seek seem
segment select send separate serialize serve set settle shape share shift
shorten show shrink signal simplify simulate skip slow solve sort span
spawn specify speed spend split spread stabilize stack stand standardize
start state stay stem stop store stream strengthen stress stretch strike
strip study submit subsample subtract succeed suffer suffice suggest suit
summarize supersede supply support suppose suppress surpass survey survive
suspend sustain swap switch symbolize synchronize synthesize tag tailor take
talk target teach tell tend terminate test think threshold throw tie time
tokenize tolerate track trade train transfer transform translate transmit
traverse treat trigger trim truncate trust try tune turn undergo underlie
underline underperform understand unify unload unpack update upgrade upload
use utilize validate value vanish vary verify view violate visit visualize
vote wait walk want warn watch weigh work wrap write yield zero
""".split())
