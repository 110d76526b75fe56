from django.test import SimpleTestCase

from spanners.deadline import Deadline, ensure
from spanners.exceptions import DeadlineExceeded


class DeadlineTest(SimpleTestCase):

    def test_never(self):
        deadline = Deadline.never()
        self.assertFalse(deadline.expired())
        deadline.check()
        self.assertGreaterEqual(deadline.elapsed(), 0)

    def test_zero_limit(self):
        deadline = Deadline(0)
        self.assertTrue(deadline.expired())
        with self.assertRaises(DeadlineExceeded):
            deadline.check()

    def test_negative_limit(self):
        self.assertTrue(Deadline(-1).expired())

    def test_long_limit(self):
        deadline = Deadline(3600)
        self.assertFalse(deadline.expired())
        deadline.check()

    def test_ensure(self):
        deadline = Deadline(5)
        self.assertIs(ensure(deadline), deadline)
        self.assertIsNone(ensure(None).expires)
