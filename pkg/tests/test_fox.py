import random

import pytest

from letterlink import (
    GroupRingElement,
    Word,
    augmentation,
    fox_derivative,
    fox_eval,
    free_reduce,
    iterated_fox,
    parse_word,
)
from letterlink.words import commutator, random_word


def element(*terms):
    out = {}
    for coeff, text in terms:
        w = free_reduce(parse_word(text))
        out[w] = out.get(w, 0) + coeff
    return GroupRingElement(out)


WORKED = parse_word("[a a, [b, a c]]")


class TestAugmentation:
    def test_sum_of_coefficients(self):
        assert augmentation(element((2, "a a b"), (1, "c"))) == 3

    def test_zero(self):
        assert augmentation(GroupRingElement.zero()) == 0

    def test_cancellation(self):
        assert augmentation(element((1, ""), (-1, "a"))) == 0


class TestFoxDerivative:
    def test_generator(self):
        assert iterated_fox(parse_word("a"), ["a"]) == element((1, ""))

    def test_inverse_generator(self):
        assert iterated_fox(parse_word("a^-1"), ["a"]) == element((-1, "a^-1"))

    def test_other_generator(self):
        assert fox_eval(parse_word("b"), ["a"]) == 0

    def test_worked_first_derivative(self):
        expected = element(
            (1, ""), (1, "a"), (1, "a a b"),
            (-1, "a a b a c b^-1 c^-1 a^-1"),
            (-1, "a a b a c b^-1 c^-1 a^-1 a^-1"),
            (-1, "a a b a c b^-1 c^-1 a^-1 a^-1 c b c^-1 a^-1"),
        )
        assert iterated_fox(WORKED, ["a"]) == expected
        assert iterated_fox(free_reduce(WORKED), ["a"]) == expected

    def test_worked_second_derivative(self):
        expected = element(
            (-2, "a a"), (3, "a a b a c b^-1"),
            (-1, "a a b a c b^-1 c^-1 a^-1 a^-1 c"),
        )
        assert iterated_fox(WORKED, ["b", "a"]) == expected

    def test_worked_third_derivative(self):
        expected = element(
            (2, "a a b"),
            (1, "a a b a c b^-1 c^-1 a^-1"),
            (1, "a a b a c b^-1 c^-1 a^-1 a^-1"),
        )
        assert iterated_fox(WORKED, ["a", "b", "a"]) == expected
        assert fox_eval(WORKED, ["a", "b", "a"]) == 4

    def test_identity_word(self):
        assert iterated_fox(Word(), ["a", "b"]) == GroupRingElement.zero()

    def test_commutator_linking_number(self):
        assert fox_eval(parse_word("a b a^-1 b^-1"), ["a", "b"]) == 1

    def test_printing(self):
        e = iterated_fox(WORKED, ["a", "b", "a"])
        assert str(e) == "2*aab + aabacb^-1c^-1a^-1 + aabacb^-1c^-1a^-1a^-1"


class TestAxioms:
    def _random_element(self, rng):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = random_word(["a", "b", "c"], rng.randint(0, 5), rng)
            terms[w] = terms.get(w, 0) + rng.randint(-2, 2)
        return GroupRingElement(terms)

    def test_derivation_law(self):
        rng = random.Random(2)
        for _ in range(50):
            x = self._random_element(rng)
            y = self._random_element(rng)
            g = rng.choice(["a", "b", "c"])
            lhs = fox_derivative(x * y, g)
            rhs = fox_derivative(x, g).scale(augmentation(y)) + x * fox_derivative(y, g)
            assert lhs == rhs

    def test_additivity(self):
        rng = random.Random(4)
        for _ in range(50):
            x = self._random_element(rng)
            y = self._random_element(rng)
            g = rng.choice(["a", "b", "c"])
            assert fox_derivative(x + y, g) == fox_derivative(x, g) + fox_derivative(y, g)

    def test_representative_independence(self):
        rng = random.Random(6)
        for _ in range(30):
            w = random_word(["a", "b"], rng.randint(1, 6), rng)
            cut = rng.randint(0, len(w))
            padded = Word(w.letters[:cut]) * parse_word("c c^-1") * Word(w.letters[cut:])
            for g in "abc":
                assert iterated_fox(w, [g]) == iterated_fox(padded, [g])


class TestBracketCutRule:
    def test_minimal_case(self):
        w = parse_word("[a, b]")
        assert fox_eval(w, ["a", "b"]) == 1
        assert fox_eval(parse_word("a"), ["a"]) * fox_eval(parse_word("b"), ["b"]) == 1

    def test_random_instances(self):
        from letterlink.words import expand_bracket, random_bracket

        rng = random.Random(12)
        for _ in range(50):
            i, j = rng.randint(1, 2), rng.randint(1, 2)
            seq = [rng.choice(["a", "b", "c"]) for _ in range(i + j)]
            u = expand_bracket(random_bracket(i, ["a", "b", "c"], rng))
            v = expand_bracket(random_bracket(j, ["a", "b", "c"], rng))
            lhs = fox_eval(commutator(u, v), seq)
            rhs = fox_eval(u, seq[:i]) * fox_eval(v, seq[i:]) - fox_eval(
                u, seq[j:]
            ) * fox_eval(v, seq[:j])
            assert lhs == rhs


class TestVanishingOnDeepWords:
    def test_functionals_kill_deeper_subgroups(self):
        from letterlink.words import random_gamma_element

        rng = random.Random(14)
        for _ in range(40):
            k = rng.randint(1, 4)
            seq = [rng.choice(["a", "b"]) for _ in range(k)]
            w = random_gamma_element(k, ["a", "b"], seed=rng)
            assert fox_eval(w, seq) == 0
