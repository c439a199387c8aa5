import pytest

from akgraph import arguments as A
from akgraph import ekb as E
from akgraph import markers
from akgraph.ingest import parse_brat_ann


def kb_from(txt, ann):
    doc = parse_brat_ann(txt, ann)
    return E.build_ekb(doc, markers.detect_ims(doc.document)), doc


@pytest.fixture
def chain_kb():
    # two chained rules: T1 => T2 (premise), T2 => T3 (claim)
    txt = "Ice melted. Therefore, roads got wet. Hence, driving was risky.\n"
    ann = "\n".join([
        "T1\tPremise 0 10\tIce melted",
        "T2\tPremise 23 36\troads got wet",
        "T3\tClaim 45 62\tdriving was risky",
        "R1\tSupports Arg1:T1 Arg2:T2",
        "R2\tSupports Arg1:T2 Arg2:T3",
    ]) + "\n"
    return kb_from(txt, ann)


def test_chain_derivation(chain_kb):
    kb, _ = chain_kb
    aset = A.derive_argument_set(kb)
    # members: T1, rule1, T2, rule2, T3 -> five arguments
    assert [a.arg_id for a in aset.arguments] == ["A1", "A2", "A3", "A4", "A5"]
    kinds = {a.arg_id: a.kind for a in aset.arguments}
    assert kinds == {"A1": "P", "A2": "IRP", "A3": "P", "A4": "IRP", "A5": "C"}

    a3 = aset.argument("A3")     # intermediate conclusion, kept as premise
    assert a3.derived and a3.top_rule == "R1"
    assert a3.premises == frozenset({"T1"})
    assert a3.conclusion == "T2"
    assert a3.subargs == ("A1", "A2", "A3")

    a5 = aset.argument("A5")
    assert a5.kind == "C"
    assert a5.premises == frozenset({"T1"})
    assert set(a5.subargs) == {"A1", "A2", "A3", "A4", "A5"}

    assert [app.result_arg for app in aset.mp_applications] == ["A3", "A5"]


def test_prem_conc_recomputation(essay):
    kb, aset = essay["ekb"], essay["aset"]
    for app in aset.mp_applications:
        rule = kb.rule(aset.argument(app.rule_arg).content)
        ants = sorted(aset.argument(x).content for x in app.antecedent_args)
        assert ants == sorted(rule.antecedents)
        result = aset.argument(app.result_arg)
        assert result.conclusion == rule.consequent
        want = frozenset().union(*(aset.argument(x).premises
                                   for x in app.antecedent_args))
        assert result.premises == want


def test_sub_closure_acyclic(essay):
    aset = essay["aset"]
    for arg in aset.arguments:
        subs = A.subarguments(aset, arg.arg_id)
        ids = {x.arg_id for x in subs}
        assert arg.arg_id in ids
        for s in subs:
            assert set(s.subargs) <= ids


def test_apply_modus_ponens_matches_pipeline(chain_kb):
    kb, _ = chain_kb
    aset = A.derive_argument_set(kb)
    rule_arg = aset.argument("A2")
    built = A.apply_modus_ponens(kb, rule_arg, [aset.argument("A1")], arg_id="A3")
    assert built == aset.argument("A3")


def test_apply_modus_ponens_rejects_wrong_antecedents(chain_kb):
    kb, _ = chain_kb
    aset = A.derive_argument_set(kb)
    with pytest.raises(A.AntecedentMismatch):
        A.apply_modus_ponens(kb, aset.argument("A2"), [aset.argument("A5")])
    with pytest.raises(A.AntecedentMismatch):
        A.apply_modus_ponens(kb, aset.argument("A2"), [])
    with pytest.raises(A.AntecedentMismatch):
        # not a rule argument
        A.apply_modus_ponens(kb, aset.argument("A1"), [aset.argument("A1")])


def shared_consequent_doc():
    # both rules conclude the merged major-claim formula
    txt = ("Cats purr a lot. Therefore, pets are nice. "
           "Dogs wag tails. Hence, pets are nice indeed.\n")
    ann = "\n".join([
        "T1\tPremise 0 15\tCats purr a lot",
        "T2\tMajorClaim 28 41\tpets are nice",
        "T3\tPremise 43 57\tDogs wag tails",
        "T4\tMajorClaim 66 86\tpets are nice indeed",
        "R1\tSupports Arg1:T1 Arg2:T2",
        "R2\tSupports Arg1:T3 Arg2:T4",
    ]) + "\n"
    return parse_brat_ann(txt, ann)


def test_two_rules_same_consequent():
    doc = shared_consequent_doc()
    kb = E.build_ekb(doc, markers.detect_ims(doc.document))
    assert len(kb.rules) == 2
    assert {r.consequent for r in kb.rules} == {"T2+T4"}
    aset = A.derive_argument_set(kb)
    both = aset.by_content("T2+T4")
    assert [a.arg_id for a in both] == ["A5", "A6"]
    first, second = both
    assert first.top_rule == "R1" and second.top_rule == "R2"
    assert first.derived and second.derived
    assert len(aset.mp_applications) == 2


def test_determinism(essay):
    kb = essay["ekb"]
    assert A.derive_argument_set(kb) == A.derive_argument_set(kb)


def test_no_rules_all_atomic():
    txt = "Cats purr. Dogs bark.\n"
    ann = "\n".join([
        "T1\tPremise 0 9\tCats purr",
        "T2\tPremise 11 20\tDogs bark",
    ]) + "\n"
    kb, _ = kb_from(txt, ann)
    aset = A.derive_argument_set(kb)
    assert all(not a.derived for a in aset.arguments)
    assert aset.mp_applications == ()
    assert all(a.premises == frozenset({a.content}) for a in aset.arguments)


def test_unknown_argument_lookup(essay):
    with pytest.raises(A.UnknownArgument):
        essay["aset"].argument("A99")
