from hypothesis import strategies as st

from klein_actions.derived import G2Element
from klein_actions.klein import BsElement
from klein_actions.words import F2_ALPHABET, ReducedWord

small = st.integers(-6, 6)
letters2 = st.tuples(st.integers(0, 1), st.sampled_from([1, -1]))
raw_words = st.lists(letters2, max_size=12)
f2_words = st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), max_size=5).map(
    lambda s: ReducedWord(F2_ALPHABET, s))
bs_elements = st.builds(BsElement, small, small)
g2_elements = st.builds(G2Element, f2_words, st.integers(-4, 4))
g2_raw_words = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=10)
