import random

import pytest

from helpers import closed_program, random_program
from morsestrata.errors import GenusNegative, InvalidProgram, NonOrientableOrInvalid
from morsestrata.partitions import OrderedPartition
from morsestrata.program import (
    LabelSpec,
    MorseProgram,
    SurfaceSignature,
    execute,
    program_from_words,
    require_valid,
    surface_signature,
    validate_program,
)

ONE = OrderedPartition.single(1)


def test_cap_count_mismatch():
    prog = program_from_words(LabelSpec.none(), ONE, [1], [[[1, 1]]], [1])
    rep = validate_program(prog)
    assert not rep.ok
    assert any("cap count mismatch" in v for v in rep.violations)


def test_merge_then_cap_is_valid():
    prog = program_from_words(LabelSpec.none(), ONE, [1, 2], [[[1], [1]]], [1])
    assert validate_program(prog).violations == ()
    assert surface_signature(prog) == SurfaceSignature(2, 1, 1)


def test_shared_mark_position():
    sig = SurfaceSignature(1, 2, 1)
    prog = MorseProgram(sig, LabelSpec.none(), OrderedPartition.single(2), (1,),
                        (((0, 0), (0, 1)), ((0, 0), (0, 2))), (1,))
    rep = validate_program(prog)
    assert any("level marks not disjoint" in v for v in rep.violations)
    with pytest.raises(InvalidProgram):
        require_valid(prog)
    with pytest.raises(InvalidProgram):
        execute(prog)


def test_disconnected_trace():
    # two minima each split by its own saddle, never joined
    prog = closed_program(OrderedPartition.single(2), [1, 2], [[[1, 1], [2, 2]]])
    assert "disconnected trace" in validate_program(prog).violations


def test_missing_circle():
    sig = SurfaceSignature(1, 1, 2)
    prog = MorseProgram(sig, LabelSpec.none(), ONE, (1,), (((0, 0), (3, 0)),), (1, 2))
    assert any("missing circle" in v for v in validate_program(prog).violations)


@pytest.mark.parametrize("sig,chi,g", [((2, 1, 1), 2, 0), ((1, 2, 1), 0, 1), ((1, 3, 2), 0, 1), ((1, 4, 1), -2, 2)])
def test_signature_arithmetic(sig, chi, g):
    s = SurfaceSignature(*sig)
    assert s.euler_char == chi and s.genus == g


def test_signature_errors():
    with pytest.raises(NonOrientableOrInvalid):
        SurfaceSignature(1, 1, 1).genus
    with pytest.raises(GenusNegative):
        SurfaceSignature(2, 0, 2).genus


def test_signature_of_random_programs_matches_counts():
    rng = random.Random(3)
    for _ in range(200):
        prog = random_program(rng)
        sig = surface_signature(prog)
        assert sig == prog.signature
        assert sig.euler_char % 2 == 0 and sig.euler_char <= 2


def test_label_spec_roundtrip_and_regimes():
    sig = SurfaceSignature(2, 2, 2)
    lab = LabelSpec(2, 1, 0, 1, 0, 0)
    assert LabelSpec.from_dict(lab.to_dict()) == lab
    assert lab.sphere_regime(sig) and lab.satisfies_main_condition(sig)
    assert not LabelSpec.none().sphere_regime(sig)
    assert LabelSpec(3, 0, 0).violations(sig)


def test_json_roundtrip_bit_exact():
    rng = random.Random(11)
    for _ in range(200):
        prog = random_program(rng)
        text = prog.to_json()
        back = MorseProgram.from_json(text)
        assert back == prog
        assert back.to_json() == text


def test_json_rejects_tampered_circles():
    import json

    prog = program_from_words(LabelSpec.none(), ONE, [1, 2], [[[1], [1]]], [1])
    d = json.loads(prog.to_json())
    d["circles"][0][0] = list(reversed(d["circles"][0][0])) + [[1, 0]]
    with pytest.raises(Exception):
        MorseProgram.from_dict(d)
