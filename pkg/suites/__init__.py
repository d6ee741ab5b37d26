# Property suites for the verify command
