"""Small-subgraph census, null-model motif scans and related network analytics."""

__version__ = "0.1.0"

from .graph import (Graph, GraphError, GraphMetrics, DegreeStats, build_graph, density,
                    global_metrics, local_clustering, path_lengths, degree_stats, edge_churn,
                    complete_graph, cycle_graph, path_graph, star_graph)
from .classes import (SubgraphClass, TemplateError, canonical_code, gamma_ratio, get_class,
                      THREE_STAR, TRIANGLE, FOUR_STAR, FOUR_PATH, TADPOLE, FOUR_CIRCLE, DIAMOND,
                      FOUR_COMPLETE, FIVE_STAR, CRICKET, BULL, BANNER, FIVE_CIRCLE, SIX_STAR,
                      CORE_CLASSES, EXTRA_CLASSES, ALL_CLASSES)
from .enumeration import (Instance, enumerate_instances, count_instances, list_four_circles,
                          runtime_model, runtime_loop_count)
from .census import (CensusReport, CensusInvariantError, census, nested_census, nonnested_census,
                     nested_counts, nonnested_counts)
from .cliques import CliqueAnalysis, clique_analysis, maximal_cliques, fisher_ryan_bound
from .nulls import (EnsembleSpec, AnnealConfig, ZScoreReport, DegenerateNullError,
                    ConnectivityError, expected_counts_gnp, sample_gnp, sample_gnp_connected,
                    rewire_chain, valid_switches, anneal_match, energy, temperature,
                    null_ensemble_stats, z_and_pvalue, motif_scan)
from .scaling import (RegressionFit, RegimeModelSpec, loglog_fit, er_implied_slope,
                      regime_model_build, regime_analytic_counts, scaling_feasibility)
from .centrality import (CentralityVector, Ranking, degree_centrality, subgraph_centrality_estrada,
                         membership_centrality, rank_and_correlate)
from .geo import (GeoPoint, TriangleGeometry, DegenerateTriangleError, gc_distance,
                  triangle_geometry, spatial_census, kde, EARTH_RADIUS_MILES, EARTH_RADIUS_NMI)
from .ingest import IngestError, PeriodSeries, parse_edges, parse_airports
from .pipeline import PipelineConfig, ReportBundle, run_pipeline, emit_reports
