# -*- coding: utf-8 -*-
"""
A JSON-LD context for report documents: a vocabulary, prefixes and term
definitions with type coercion and containers.

    >>> ctx = Context(REPORT_CONTEXT)
    >>> ctx.expand('tolerance')
    'urn:transgression-lab:vocab:tolerance'
    >>> ctx.to_symbol('urn:transgression-lab:vocab:passed')
    'passed'
    >>> ctx.shrink_iri('urn:transgression-lab:report:top_chern')
    'report:top_chern'

"""
from collections import namedtuple

from rdflib.namespace import RDF, XSD

from . import errors
from .keys import (CONTAINER, CONTEXT, ID, SET, TYPE, VOCAB, ANCHOR, CHECKS,
                   COMPUTED_IM, COMPUTED_RE, CONFIG, ELAPSED, EXPECTED_IM,
                   EXPECTED_RE, NAME, PASSED, POSITION, SCENARIO, TOLERANCE,
                   VERSION)
from .util import source_to_json

__all__ = ['Context', 'Term', 'UNDEF', 'VOCAB_IRI', 'REPORT_IRI',
           'REPORT_CONTEXT']


VOCAB_IRI = u'urn:transgression-lab:vocab:'
REPORT_IRI = u'urn:transgression-lab:report:'

NODE_KEYS = set([ID, TYPE])


class Defined(int):
    pass


UNDEF = Defined(0)


def _double(name):
    return {ID: VOCAB_IRI + name, TYPE: u'xsd:double'}


REPORT_CONTEXT = {
    VOCAB: VOCAB_IRI,
    u'xsd': str(XSD),
    u'report': REPORT_IRI,
    SCENARIO: VOCAB_IRI + SCENARIO,
    ANCHOR: VOCAB_IRI + ANCHOR,
    CONFIG: VOCAB_IRI + CONFIG,
    VERSION: VOCAB_IRI + VERSION,
    NAME: VOCAB_IRI + NAME,
    CHECKS: {ID: VOCAB_IRI + CHECKS, TYPE: ID, CONTAINER: SET},
    POSITION: {ID: VOCAB_IRI + POSITION, TYPE: u'xsd:integer'},
    PASSED: {ID: VOCAB_IRI + PASSED, TYPE: u'xsd:boolean'},
    COMPUTED_RE: _double(COMPUTED_RE),
    COMPUTED_IM: _double(COMPUTED_IM),
    EXPECTED_RE: _double(EXPECTED_RE),
    EXPECTED_IM: _double(EXPECTED_IM),
    TOLERANCE: _double(TOLERANCE),
    ELAPSED: _double(ELAPSED),
}


Term = namedtuple('Term', 'id, name, type, container')
Term.__new__.__defaults__ = (UNDEF, UNDEF)


class Context(object):

    def __init__(self, source=None):
        self.vocab = None
        self.terms = {}
        self._alias = {}
        self._lookup = {}
        self._prefixes = {}
        if source:
            self.load(source)

    def get_key(self, key):
        return self._alias.get(key, key)

    id_key = property(lambda self: self.get_key(ID))
    type_key = property(lambda self: self.get_key(TYPE))

    def add_term(self, name, idref, coercion=UNDEF, container=UNDEF):
        term = Term(idref, name, coercion, container)
        self.terms[name] = term
        self._lookup[(idref, coercion, container)] = term
        self._prefixes[idref] = name
        if idref in NODE_KEYS:
            self._alias[idref] = name

    def find_term(self, idref, coercion=UNDEF, container=UNDEF):
        lu = self._lookup
        found = lu.get((idref, coercion, container))
        if found:
            return found
        for key in ((idref, coercion, SET), (idref, UNDEF, container),
                    (idref, UNDEF, UNDEF)):
            if key in lu:
                return lu[key]
        for name in sorted(self.terms):
            if self.terms[name].id == idref:
                return self.terms[name]
        return None

    def expand(self, term_curie_or_iri, use_vocab=True):
        if use_vocab:
            term = self.terms.get(term_curie_or_iri)
            if term:
                return term.id
        pfx, local = self._split(term_curie_or_iri)
        if pfx is not None:
            ns = self.terms.get(pfx)
            if ns and ns.id:
                return ns.id + local
            return term_curie_or_iri
        if use_vocab and self.vocab:
            return self.vocab + term_curie_or_iri
        return None

    def shrink_iri(self, iri):
        iri = str(iri)
        for ns, pfx in sorted(self._prefixes.items(),
                              key=lambda item: -len(item[0])):
            if iri.startswith(ns) and iri != ns and \
                    self.terms[pfx].type is UNDEF and ns[-1] in ':/#':
                return u':'.join((pfx, iri[len(ns):]))
        return iri

    def to_symbol(self, iri):
        iri = str(iri)
        if iri == str(RDF.type):
            return self.type_key
        term = self.find_term(iri)
        if term:
            return term.name
        if self.vocab and iri.startswith(self.vocab):
            return iri[len(self.vocab):]
        return self.shrink_iri(iri)

    def load(self, source):
        source = source_to_json(source)
        if CONTEXT in source:
            source = source[CONTEXT]
        if not isinstance(source, dict):
            raise errors.ValidationError("a context must be a JSON object")
        self.vocab = source.get(VOCAB, self.vocab)
        # prefixes first so that compact IRIs in definitions can expand
        for key, value in sorted(source.items(),
                                 key=lambda item: isinstance(item[1], dict)):
            if key != VOCAB:
                self._read_term(key, value)

    def _read_term(self, name, dfn):
        if isinstance(dfn, dict):
            idref = dfn.get(ID, UNDEF)
            if idref is UNDEF:
                idref = self.vocab + name if self.vocab else None
            else:
                idref = self.expand(idref, False) or idref
            coercion = dfn.get(TYPE, UNDEF)
            if coercion not in (UNDEF, ID, VOCAB):
                coercion = self.expand(coercion, False)
            self.add_term(name, idref, coercion, dfn.get(CONTAINER, UNDEF))
        else:
            self.add_term(name, self.expand(dfn, False) or dfn)

    @staticmethod
    def _split(expr):
        if ':' not in expr:
            return None, expr
        pfx, local = expr.split(':', 1)
        if local.startswith('//'):
            return None, expr
        return pfx, local

    def to_dict(self):
        """The context as a JSON-LD ``@context`` value with compact types."""
        out = {}
        if self.vocab:
            out[VOCAB] = self.vocab
        for name, term in self.terms.items():
            if term.type is UNDEF and term.container is UNDEF:
                out[name] = term.id
                continue
            dfn = {ID: term.id}
            if term.type is not UNDEF:
                dfn[TYPE] = self.shrink_iri(term.type)
            if term.container is not UNDEF:
                dfn[CONTAINER] = term.container
            out[name] = dfn
        return out
