import logging

# scenario runs log every check; keep the test output to nose's summary
logging.getLogger('transgression_lab').addHandler(logging.NullHandler())
