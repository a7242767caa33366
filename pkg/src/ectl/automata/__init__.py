"""Word automata: DFA/NFA, (D)VPA and real-time (D)PDA."""
from .finite import (EPS, FiniteAutomaton, determinize_nfa, letters_automaton, remove_epsilon,
                     sigma_automaton, sigma_star_automaton)
from .ops import (DETERMINISTIC_KINDS, FINITE_KINDS, KINDS, PUSHDOWN_KINDS, VISIBLY_KINDS,
                  accepts, automaton_depth, complement, complete, determinize, is_empty,
                  is_finite_language, lift, longest_word_length, restrict_to_single_letters,
                  shortest_word, size, with_letters)
from .pushdown import PushdownWordAutomaton, VisiblyPushdownAutomaton, determinize_vpa
from .regex import regex_to_nfa

__all__ = [
    "EPS", "FiniteAutomaton", "PushdownWordAutomaton", "VisiblyPushdownAutomaton",
    "DETERMINISTIC_KINDS", "FINITE_KINDS", "KINDS", "PUSHDOWN_KINDS", "VISIBLY_KINDS",
    "accepts", "automaton_depth", "complement", "complete", "determinize", "determinize_nfa",
    "determinize_vpa", "is_empty", "is_finite_language", "letters_automaton", "lift",
    "longest_word_length", "regex_to_nfa", "remove_epsilon", "restrict_to_single_letters",
    "shortest_word", "sigma_automaton", "sigma_star_automaton", "size", "with_letters",
]
