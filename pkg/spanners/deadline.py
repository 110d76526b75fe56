"""
<Program Name>
    deadline.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Cooperative wall-clock cancellation. Algorithms receive a `Deadline` and
    call `check()` at their loop checkpoints, which raises `DeadlineExceeded`
    once the time limit is over. Nothing is interrupted from the outside.

"""
import time

from spanners.exceptions import DeadlineExceeded


class Deadline(object):
    """A point in time on the monotonic clock. A `Deadline` without a limit
    never expires. """

    def __init__(self, seconds=None):
        self.seconds = seconds
        self.started = time.monotonic()
        if seconds is None:
            self.expires = None
        else:
            self.expires = self.started + max(0.0, float(seconds))


    @staticmethod
    def never():
        return Deadline(None)


    def expired(self):
        # A zero limit is over before the first checkpoint
        if self.expires is None:
            return False
        return self.seconds <= 0 or time.monotonic() >= self.expires


    def check(self):
        if self.expired():
            raise DeadlineExceeded("Time limit of {}s exceeded".format(
                    self.seconds))


    def elapsed(self):
        return time.monotonic() - self.started


def ensure(deadline):
    """Return the passed deadline or one that never expires. """
    return deadline if deadline is not None else Deadline.never()
