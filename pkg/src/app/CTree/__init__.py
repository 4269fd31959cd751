# Conditional Inference Tree Package
from src.app.CTree.controls import FitControls
from src.app.CTree.inference import TestResult, SplitDecision, covariate_test, anova_test, select_split_variable
from src.app.CTree.splitting import SplitPoint, best_split_point
from src.app.CTree.fitter import CTreeFitter, FitTraceEntry, fit, predict, predict_many
