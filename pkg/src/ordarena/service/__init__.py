from ordarena.service.state import ServiceError, Session, SessionStore, build_structure

__all__ = ["ServiceError", "Session", "SessionStore", "build_structure"]
