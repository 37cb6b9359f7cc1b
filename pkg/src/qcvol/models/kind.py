from enum import Enum


class ChannelKind(Enum):
    general = "general"
    unital = "unital"
