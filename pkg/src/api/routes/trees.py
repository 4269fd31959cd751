"""
Tree Routes - Fitting, listing and rendering endpoints
"""
from typing import Optional

from fastapi import APIRouter, Depends, File, Form, UploadFile

from src.api.controllers.tree_controller import TreeController
from src.api.middleware.auth import verify_api_key
from src.api.schemas.requests import FitParameters, PrintTreeRequest, RenderParameters
from src.api.schemas.responses import APIResponse

router = APIRouter(prefix="/api", tags=["Trees"])


@router.post("/fit", response_model=APIResponse)
async def fit(
    file: UploadFile = File(...),
    formula: str = Form(...),
    alpha: Optional[float] = Form(None),
    mincriterion: Optional[float] = Form(None),
    minbucket: Optional[int] = Form(None),
    minsplit: Optional[int] = Form(None),
    maxdepth: Optional[int] = Form(None),
    cut: Optional[str] = Form(None),
    cut_breaks: Optional[str] = Form(None),
    api_key: str = Depends(verify_api_key)
):
    params = FitParameters(
        formula=formula, alpha=alpha, mincriterion=mincriterion, minbucket=minbucket,
        minsplit=minsplit, maxdepth=maxdepth, cut=cut, cut_breaks=cut_breaks,
    )
    return await TreeController.fit(file, params)


@router.post("/print", response_model=APIResponse)
def print_tree(request: PrintTreeRequest, api_key: str = Depends(verify_api_key)):
    return TreeController.print_tree(request)


@router.post("/render")
async def render(
    file: UploadFile = File(...),
    tree: Optional[str] = Form(None),
    formula: Optional[str] = Form(None),
    alpha: Optional[float] = Form(None),
    mincriterion: Optional[float] = Form(None),
    minbucket: Optional[int] = Form(None),
    minsplit: Optional[int] = Form(None),
    maxdepth: Optional[int] = Form(None),
    cut: Optional[str] = Form(None),
    cut_breaks: Optional[str] = Form(None),
    color_type: Optional[int] = Form(None),
    bar_alpha: Optional[float] = Form(None),
    text_title: Optional[float] = Form(None),
    text_axis: Optional[float] = Form(None),
    text_main: Optional[float] = Form(None),
    text_label: Optional[float] = Form(None),
    text_bar: Optional[float] = Form(None),
    text_percentile: Optional[float] = Form(None),
    text_round: Optional[int] = Form(None),
    interval: Optional[bool] = Form(None),
    density_line: Optional[bool] = Form(None),
    add_h_axis: Optional[bool] = Form(None),
    add_p_axis: Optional[bool] = Form(None),
    width: Optional[int] = Form(None),
    height: Optional[int] = Form(None),
    api_key: str = Depends(verify_api_key)
):
    fit_params = None
    if formula is not None:
        fit_params = FitParameters(
            formula=formula, alpha=alpha, mincriterion=mincriterion, minbucket=minbucket,
            minsplit=minsplit, maxdepth=maxdepth, cut=cut, cut_breaks=cut_breaks,
        )
    render_params = RenderParameters(
        color_type=color_type, bar_alpha=bar_alpha, text_title=text_title, text_axis=text_axis,
        text_main=text_main, text_label=text_label, text_bar=text_bar, text_percentile=text_percentile,
        text_round=text_round, interval=interval, density_line=density_line,
        add_h_axis=add_h_axis, add_p_axis=add_p_axis, width=width, height=height,
    )
    return await TreeController.render(file, tree, fit_params, render_params, cut, cut_breaks)
