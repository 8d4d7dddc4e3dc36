from .app import ApiError, BoxRegistry, create_app

__all__ = ["ApiError", "BoxRegistry", "create_app"]
