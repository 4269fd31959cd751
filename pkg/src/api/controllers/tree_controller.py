"""
Tree Controller - Handles fitting, listing and rendering endpoints
"""
import json
from typing import Any, Dict, Optional

from fastapi import HTTPException, UploadFile
from fastapi.responses import Response

from src.api.schemas.requests import FitParameters, PrintTreeRequest, RenderParameters
from src.api.schemas.responses import FitResponse, TextResponse
from src.app.CTree.controls import FitControls
from src.app.Viz.options import RenderOptions
from src.app.errors import SubgroupTreeError
from src.app.services.tree_service import parse_number_list, tree_service
from src.cli.formula import parse_formula
from src.config.settings import settings


def _bad_request(result: Dict[str, Any]) -> HTTPException:
    return HTTPException(
        status_code=400,
        detail={
            "success": False,
            "message": result["message"],
            "error": result["error"],
            "field": result.get("field"),
        },
    )


def _rejected(exc: SubgroupTreeError) -> HTTPException:
    return _bad_request({"message": exc.message, "error": exc.code, "field": exc.field})


class TreeController:
    """
    Controller for tree endpoints
    """

    @staticmethod
    async def _read_upload(file: UploadFile) -> bytes:
        # Validate file type
        if file.content_type not in settings.ALLOWED_DATA_TYPES:
            raise HTTPException(
                status_code=400,
                detail=f"Invalid file type. Allowed types: {settings.ALLOWED_DATA_TYPES}",
            )
        content = await file.read()
        if len(content) > settings.MAX_UPLOAD_SIZE:
            raise HTTPException(
                status_code=400,
                detail=f"File too large. Maximum size: {settings.MAX_UPLOAD_SIZE} bytes",
            )
        return content

    @staticmethod
    def _fit_arguments(params: FitParameters) -> Dict[str, Any]:
        """Formula, controls and cut options checked before any data is read"""
        try:
            outcome, covariates = parse_formula(params.formula)
            controls = FitControls.create(
                alpha=params.alpha,
                mincriterion=params.mincriterion,
                minbucket=params.minbucket,
                minsplit=params.minsplit,
                maxdepth=params.maxdepth,
            )
            cut = parse_number_list(params.cut, "cut") if params.cut else None
            cut_breaks = parse_number_list(params.cut_breaks, "cut_breaks") if params.cut_breaks else None
        except SubgroupTreeError as exc:
            raise _rejected(exc)
        return {
            "outcome": outcome,
            "covariates": covariates,
            "controls": controls,
            "cut": cut,
            "cut_breaks": cut_breaks,
        }

    @staticmethod
    def _render_options(params: RenderParameters) -> RenderOptions:
        try:
            return RenderOptions.create(
                color_type=params.color_type,
                alpha=params.bar_alpha,
                text_title=params.text_title,
                text_axis=params.text_axis,
                text_main=params.text_main,
                text_label=params.text_label,
                text_bar=params.text_bar,
                text_percentile=params.text_percentile,
                text_round=params.text_round,
                interval_mode=params.interval,
                density_line=params.density_line,
                add_h_axis=params.add_h_axis,
                add_p_axis=params.add_p_axis,
            )
        except SubgroupTreeError as exc:
            raise _rejected(exc)

    @staticmethod
    async def fit(file: UploadFile, params: FitParameters):
        """
        Fit a tree on an uploaded CSV file
        """
        arguments = TreeController._fit_arguments(params)
        content = await TreeController._read_upload(file)

        with tree_service.uploaded_csv(content, file.filename or "upload.csv") as data_path:
            result = tree_service.fit_tree(data_path, **arguments)

        if not result["success"]:
            raise _bad_request(result)

        tree = result["data"]["tree"]
        return {
            "success": True,
            "message": result["message"],
            "data": FitResponse(
                tree=result["data"]["document"],
                trace=result["data"]["trace"],
                terminal_nodes=tree.terminal_count,
            ),
            "error": None,
        }

    @staticmethod
    def print_tree(request: PrintTreeRequest):
        """
        List a tree document as text
        """
        result = tree_service.describe_tree(request.tree)
        if not result["success"]:
            raise _bad_request(result)
        return {
            "success": True,
            "message": result["message"],
            "data": TextResponse(text=result["data"]),
            "error": None,
        }

    @staticmethod
    async def render(
        file: UploadFile,
        tree: Optional[str],
        fit_params: Optional[FitParameters],
        render_params: RenderParameters,
        cut: Optional[str] = None,
        cut_breaks: Optional[str] = None,
    ) -> Response:
        """
        Render a tree document, or a tree fitted on the spot, against an uploaded CSV file
        """
        if tree is None and fit_params is None:
            raise HTTPException(status_code=400, detail="Either tree or formula is required")

        if tree is not None:
            try:
                tree = json.loads(tree)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=f"tree is not valid JSON: {exc}")

        options = TreeController._render_options(render_params)
        arguments = TreeController._fit_arguments(fit_params) if fit_params is not None else None
        try:
            cuts = {
                "cut": parse_number_list(cut, "cut") if cut else None,
                "cut_breaks": parse_number_list(cut_breaks, "cut_breaks") if cut_breaks else None,
            }
        except SubgroupTreeError as exc:
            raise _rejected(exc)
        content = await TreeController._read_upload(file)

        with tree_service.uploaded_csv(content, file.filename or "upload.csv") as data_path:
            if tree is not None:
                result = tree_service.render_tree(
                    tree,
                    data_path,
                    options,
                    render_params.width,
                    render_params.height,
                    **cuts,
                )
            else:
                result = tree_service.fit_and_render(
                    data_path,
                    options=options,
                    width=render_params.width,
                    height=render_params.height,
                    **arguments,
                )

        if not result["success"]:
            raise _bad_request(result)
        return Response(content=result["data"], media_type="image/svg+xml")
