// Minimal library walkthrough: generate a map, plan with each planner,
// print the metrics, and write an SVG of the best run.

#include <cstdio>

#include <gridplan/gridplan.hpp>

int main() {
    using namespace gridplan;

    const OccupancyGrid grid = generate_warehouse(300, 200, /*seed=*/3, /*obstacle_density=*/0.2);
    const auto anchors = warehouse_anchors(grid.width, grid.height);
    const Point start{anchors.sx + 0.5, anchors.sy + 0.5};
    const Point goal{anchors.gx + 0.5, anchors.gy + 0.5};

    for (Algorithm algo : {Algorithm::dijkstra_grid, Algorithm::astar_grid, Algorithm::prm,
                           Algorithm::astar_prm}) {
        PlannerSpec spec;
        spec.algorithm = algo;
        spec.n_samples = 600;
        spec.k_neighbors = 10;
        spec.seed = 1;
        const PlanResult result = plan(grid, start, goal, spec);
        std::printf("%-13s success=%d length=%8.2f m  time=%.3f s  expansions=%lld\n",
                    to_string(algo), result.path.has_value(),
                    result.path ? result.report.path_length : 0.0, result.report.wall_time,
                    result.report.node_expansion);
        if (algo == Algorithm::astar_prm && result.path) {
            std::vector<Path> paths{*result.raw_path, *result.path};
            harness::write_file("quickstart.svg",
                                render_svg(grid, &*result.roadmap, paths));
            std::printf("wrote quickstart.svg\n");
        }
    }
    return 0;
}
