"""Hash caching for frozen dataclasses that get used as dictionary keys."""


def cached_hash(cls):
    base = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = base(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls
