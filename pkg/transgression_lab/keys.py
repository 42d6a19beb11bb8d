CONTEXT = u'@context'
CONTAINER = u'@container'
GRAPH = u'@graph'
ID = u'@id'
LIST = u'@list'
SET = u'@set'
TYPE = u'@type'
VALUE = u'@value'
VOCAB = u'@vocab'

# report vocabulary
REPORT = u'Report'
CHECK = u'Check'
SCENARIO = u'scenario'
ANCHOR = u'anchor'
CONFIG = u'config'
CHECKS = u'check'
NAME = u'name'
POSITION = u'position'
COMPUTED_RE = u'computedRe'
COMPUTED_IM = u'computedIm'
EXPECTED_RE = u'expectedRe'
EXPECTED_IM = u'expectedIm'
TOLERANCE = u'tolerance'
PASSED = u'passed'
ELAPSED = u'elapsed'
VERSION = u'version'
