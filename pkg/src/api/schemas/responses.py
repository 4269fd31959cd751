"""
Response models define what data our API sends back
Clients will receive these exact JSON structures
"""
from datetime import datetime
from typing import Any, List, Optional

from pydantic import BaseModel, Field


class FitResponse(BaseModel):
    """
    A fitted tree and the decisions taken at each node
    """
    tree: Any = Field(..., description="Tree interchange document")
    trace: List[str] = Field(default_factory=list, description="Per-node split or stop decisions")
    terminal_nodes: int = Field(..., description="Number of terminal nodes")


class TextResponse(BaseModel):
    """
    Plain-text tree listing
    """
    text: str = Field(..., description="Model formula header, node listing and node counts")


class APIResponse(BaseModel):
    """
    Standard API response wrapper
    All our endpoints will use this format so clients know what to expect
    """
    success: bool = Field(..., description="Whether the operation succeeded")
    message: str = Field(..., description="Human-readable message")
    data: Optional[Any] = Field(None, description="The actual response data")
    error: Optional[str] = Field(None, description="Error code if success=false")


class HealthResponse(BaseModel):
    """
    Health check response for monitoring
    """
    status: str = Field(..., description="API status")
    version: str = Field(..., description="API version")
    timestamp: datetime = Field(default_factory=datetime.now)
