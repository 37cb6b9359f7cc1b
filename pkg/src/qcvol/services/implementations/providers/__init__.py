from .config_provider import ConfigProvider

__all__ = ("ConfigProvider",)
