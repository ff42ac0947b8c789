#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "rsg/bench.hpp"

#include "test_support.hpp"

using namespace rsg;
using test_support::arena_a1;

TEST_CASE("compute_saving", "[bench]") {
    REQUIRE(compute_saving(0.0010, 0.0005) == Catch::Approx(50.0));
    REQUIRE(compute_saving(0.125, 0.125) == Catch::Approx(0.0));
    REQUIRE(compute_saving(0.0011, 0.0007) == Catch::Approx(36.36).margin(0.005));
    REQUIRE(compute_saving(0.0010, 0.0020) == Catch::Approx(-100.0)); // slower runs go negative
    REQUIRE_THROWS_AS(compute_saving(0.0, 0.1), ZeroBase);
}

TEST_CASE("emit_table renders the fixed CSV columns", "[bench]") {
    ExperimentRecord rec;
    rec.experiment_label = 1;
    rec.total_nodes = 557;
    rec.total_edges = 768;
    rec.target_nodes = 77;
    rec.safety_nodes = 279;
    rec.reachability_nodes = 278;
    rec.fw_time_s = 0.0011;
    rec.bw_time_s = 0.0225;
    rec.mp_time_s = 0.0007;
    rec.saving_wrt_fw_pct = compute_saving(rec.fw_time_s, rec.mp_time_s);
    rec.saving_wrt_bw_pct = compute_saving(rec.bw_time_s, rec.mp_time_s);

    SECTION("csv") {
        std::string csv = emit_table(std::span{&rec, 1}, TableFormat::Csv);
        REQUIRE(csv == std::string(kTableHeader) +
                           "\n1,557,768,77,279,278,0.0011,0.0225,0.0007,36.36,96.89\n");
        REQUIRE(csv.find("557,768,77,279,278") != std::string::npos);
    }
    SECTION("empty list is the header only") {
        REQUIRE(emit_table({}, TableFormat::Csv) == std::string(kTableHeader) + "\n");
    }
    SECTION("markdown renders the same columns") {
        std::string md = emit_table(std::span{&rec, 1}, TableFormat::Markdown);
        REQUIRE(md.find("| experiment_label |") == 0);
        REQUIRE(md.find("| 557 |") != std::string::npos);
        std::size_t pipes = 0;
        for (char c : md.substr(0, md.find('\n'))) pipes += c == '|';
        REQUIRE(pipes == 12); // 11 columns
    }
}

TEST_CASE("CSV round-trips at printed precision", "[bench]") {
    std::vector<ExperimentRecord> records(3);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].experiment_label = i + 1;
        records[i].total_nodes = 10 * (i + 1);
        records[i].total_edges = 20 * (i + 1);
        records[i].target_nodes = i;
        records[i].safety_nodes = 5 * (i + 1);
        records[i].reachability_nodes = 5 * (i + 1);
        records[i].fw_time_s = 0.0015 + 0.001 * static_cast<double>(i);
        records[i].bw_time_s = 0.0100;
        records[i].mp_time_s = 0.0007;
        records[i].saving_wrt_fw_pct = compute_saving(records[i].fw_time_s, records[i].mp_time_s);
        records[i].saving_wrt_bw_pct = compute_saving(records[i].bw_time_s, records[i].mp_time_s);
    }
    std::string csv = emit_table(records, TableFormat::Csv);
    std::vector<ExperimentRecord> reparsed = parse_table_csv(csv);
    REQUIRE(emit_table(reparsed, TableFormat::Csv) == csv);

    REQUIRE_THROWS_AS(parse_table_csv("bogus header\n1,2,3\n"), SyntaxError);
    REQUIRE_THROWS_AS(parse_table_csv(std::string(kTableHeader) + "\n1,2,3\n"), SyntaxError);
}

TEST_CASE("a single experiment record is assembled from the arena", "[bench]") {
    Arena a1 = arena_a1();
    ExperimentRecord rec = run_single_experiment(1, a1, NodeSet{0, 1, 2});
    REQUIRE(rec.experiment_label == 1);
    REQUIRE(rec.total_nodes == 4);
    REQUIRE(rec.total_edges == 5);
    REQUIRE(rec.target_nodes == 3);
    REQUIRE(rec.safety_nodes == 2);
    REQUIRE(rec.reachability_nodes == 2);
    REQUIRE(rec.fw_time_s > 0.0);
    REQUIRE(rec.saving_wrt_fw_pct ==
            Catch::Approx((1.0 - rec.mp_time_s / rec.fw_time_s) * 100.0));
    REQUIRE(rec.saving_wrt_bw_pct ==
            Catch::Approx((1.0 - rec.mp_time_s / rec.bw_time_s) * 100.0));
}

TEST_CASE("experiment batteries produce one row per experiment", "[bench]") {
    ExperimentParams params{.num_nodes_min = 4, .num_nodes_max = 16,
                            .avg_edges_per_node_min = 0.5, .avg_edges_per_node_max = 2.5,
                            .target_safe_ratio_min = 0.0, .target_safe_ratio_max = 1.0,
                            .experiments = 5, .seed = 21};
    BatteryOptions opts;
    opts.repeats = 3;
    opts.include_backward_improved = true;
    std::vector<ExperimentRecord> records = run_experiment_battery(params, opts);
    REQUIRE(records.size() == 5);
    for (std::size_t i = 0; i < records.size(); ++i) {
        REQUIRE(records[i].experiment_label == i + 1);
        REQUIRE(records[i].total_nodes >= 4);
        REQUIRE(records[i].total_nodes <= 16);
        REQUIRE(records[i].safety_nodes + records[i].reachability_nodes ==
                records[i].total_nodes);
        REQUIRE(records[i].target_nodes <= records[i].total_nodes);
    }

    params.experiments = 0;
    REQUIRE(run_experiment_battery(params).empty());
}
