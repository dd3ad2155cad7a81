#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pbrs/experiment.hpp"
#include "pbrs/svg.hpp"

using namespace pbrs;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kTinyTabular = R"(
# tiny smoke experiment
env.name = gridworld
env.width = 4
env.height = 4
agent.name = tabular
agent.gamma = 0.95
potential.base = manhattan
potential.normalize = true
potential.exp_base = 32
run.bias_list = 0, 0.05
run.include_unshaped = true
run.seeds = 1,2
run.train_steps = 1200
run.eval_interval = 400
run.n_eval = 4
)";

}  // namespace

TEST_CASE("config parsing basics") {
    const Config cfg = Config::parse_string(
        "a.x = 3\nb.y = hello  # comment\n# full comment line\nc.z=1.5\nd.list=1,2,3\n");
    CHECK(cfg.get_long("a.x") == 3);
    CHECK(cfg.get_string("b.y") == "hello");
    CHECK(cfg.get_double("c.z") == 1.5);
    CHECK(cfg.get_long_list("d.list") == std::vector<long>{1, 2, 3});
    CHECK(cfg.get_double("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(cfg.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("novalue\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("a=1\na=2\n"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("b.y"), ConfigError);
}

TEST_CASE("unknown config keys are rejected") {
    Config cfg = Config::parse_string(
        "env.name=gridworld\nagent.name=tabular\nrun.seeds=1\nrun.train_steps=10\n"
        "run.typo_key=5\n");
    CHECK_THROWS_WITH_AS(resolve_experiment(cfg), "config: unknown key run.typo_key",
                         ConfigError);
}

TEST_CASE("aggregate computes mean and sem") {
    std::vector<std::vector<EvalPoint>> single = {{{0, 48.0, 1.0}, {10, 20.0, 1.0}}};
    const LearningCurve one = aggregate(single);
    REQUIRE(one.rows.size() == 2);
    CHECK(one.rows[0].mean_len == 48.0);
    CHECK(one.rows[0].sem_len == 0.0);
    CHECK(one.rows[0].n_runs == 1);

    std::vector<std::vector<EvalPoint>> equal = {{{0, 48.0, 0.0}}, {{0, 48.0, 0.0}}};
    CHECK(aggregate(equal).rows[0].mean_len == 48.0);
    CHECK(aggregate(equal).rows[0].sem_len == 0.0);

    std::vector<std::vector<EvalPoint>> pair = {{{0, 40.0, 0.0}}, {{0, 56.0, 0.0}}};
    const LearningCurve agg = aggregate(pair);
    CHECK(agg.rows[0].mean_len == 48.0);
    CHECK(agg.rows[0].sem_len == doctest::Approx(8.0).epsilon(1e-12));

    std::vector<std::vector<EvalPoint>> misaligned = {{{0, 1.0, 0.0}}, {{5, 1.0, 0.0}}};
    CHECK_THROWS_AS(aggregate(misaligned), ContractViolation);
    std::vector<std::vector<EvalPoint>> ragged = {{{0, 1.0, 0.0}}, {}};
    CHECK_THROWS_AS(aggregate(ragged), ContractViolation);
}

TEST_CASE("curve CSVs round-trip with 9 significant digits") {
    LearningCurve curve;
    curve.rows.push_back({0, 48.123456789, 0.25, -3.5, 0.125, 3});
    curve.rows.push_back({250, 20.0, 0.0, 1.0, 0.0, 3});
    std::stringstream ss;
    write_curve_csv(ss, curve, "fixture");
    const std::string text = ss.str();
    CHECK(text.find("# fixture") == 0);
    CHECK(text.find("48.1234568") != std::string::npos);  // 9 significant digits
    const LearningCurve back = read_curve_csv(ss);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].mean_len == doctest::Approx(48.123456789).epsilon(1e-9));
    CHECK(back.rows[1].n_runs == 3);
}

TEST_CASE("svg rendering is deterministic and matches the golden fixture") {
    LearningCurve a, b;
    for (int i = 0; i <= 10; ++i) {
        a.rows.push_back({i * 100, 250.0 - 20.0 * i, 5.0, -250.0 + 20.0 * i, 5.0, 3});
        b.rows.push_back({i * 100, 250.0, 2.0, -250.0, 2.0, 3});
    }
    const std::vector<SvgSeries> series = {{"bias_1", a}, {"unshaped", b}};
    const std::string svg = render_svg(series, SvgStyle{});
    CHECK(svg == render_svg(series, SvgStyle{}));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("polygon") != std::string::npos);
    CHECK(svg.find("bias_1") != std::string::npos);

    const std::string golden_path = std::string(TEST_SOURCE_DIR) + "/golden/fixture.svg";
    CHECK(svg == slurp(golden_path));

    CHECK_THROWS_AS(render_svg({}, SvgStyle{}), std::invalid_argument);
    CHECK_THROWS_AS(render_svg({{"empty", LearningCurve{}}}, SvgStyle{}),
                    std::invalid_argument);
}

TEST_CASE("a flat series renders a horizontal line with a zero-height band") {
    LearningCurve flat;
    flat.rows.push_back({0, 100.0, 0.0, 0.0, 0.0, 1});
    flat.rows.push_back({50, 100.0, 0.0, 0.0, 0.0, 1});
    const std::string svg = render_svg({{"flat", flat}}, SvgStyle{});
    // the polyline's two points share a y coordinate
    const auto pos = svg.find("<polyline points=\"");
    REQUIRE(pos != std::string::npos);
    std::stringstream pts(svg.substr(pos + 18, 60));
    std::string p1, p2;
    pts >> p1 >> p2;
    CHECK(p1.substr(p1.find(',')) == p2.substr(p2.find(',')));
}

TEST_CASE("run_experiment writes deterministic CSVs with provenance") {
    const auto tmp = std::filesystem::temp_directory_path() / "pbrs_exp_test";
    std::filesystem::remove_all(tmp);

    Config cfg = Config::parse_string(kTinyTabular);
    cfg.set("output.dir", (tmp / "out").string());
    const ExperimentOutput first = run_experiment(cfg);

    REQUIRE(first.arms.size() == 3);  // unshaped + two biases
    CHECK(first.arms[0].label == "unshaped");
    CHECK(first.arms[1].label == "bias_0");
    CHECK(first.arms[2].label == "bias_0.05");
    for (const auto& arm : first.arms) {
        CHECK(arm.curves.size() == 2);
        CHECK(arm.aggregate.rows.size() == 4);  // steps 0, 400, 800, 1200
        CHECK(arm.aggregate.rows[0].n_runs == 2);
    }
    CHECK(first.excluded_runs.empty());

    const char* names[] = {"eval_unshaped_seed1.csv", "eval_bias_0.05_seed2.csv",
                           "curve_bias_0.csv"};
    std::map<std::string, std::string> snapshot;
    for (const char* name : names) snapshot[name] = slurp((tmp / "out" / name).string());

    // identical config, second run: byte-identical files
    run_experiment(cfg);
    for (const char* name : names) {
        const std::string again = slurp((tmp / "out" / name).string());
        CHECK(again == snapshot[name]);
        CHECK(again.find("# config:") == 0);
        CHECK(again.find("seed") != std::string::npos);
    }
    std::filesystem::remove_all(tmp);
}

TEST_CASE("seed offset shifts every run's stream") {
    const auto tmp = std::filesystem::temp_directory_path() / "pbrs_offset_test";
    std::filesystem::remove_all(tmp);
    Config cfg = Config::parse_string(kTinyTabular);
    cfg.set("output.dir", (tmp / "a").string());
    const ExperimentOutput base = run_experiment(cfg, 0);
    cfg.set("output.dir", (tmp / "b").string());
    const ExperimentOutput shifted = run_experiment(cfg, 100);
    CHECK(shifted.arms[0].seeds == std::vector<long>{101, 102});
    // different streams almost surely change at least one eval point
    bool any_diff = false;
    for (std::size_t i = 0; i < base.arms[0].curves[0].size(); ++i)
        any_diff |= base.arms[0].curves[0][i].mean_len !=
                    shifted.arms[0].curves[0][i].mean_len;
    CHECK(any_diff);
    std::filesystem::remove_all(tmp);
}

TEST_CASE("desk scale applies the documented overrides") {
    Config cfg = Config::parse_string(
        "env.name=gridworld\nenv.width=25\nenv.height=25\nagent.name=tabular\n"
        "run.seeds=1,2,3,4,5\nrun.train_steps=250000\n");
    apply_desk_scale(cfg);
    CHECK(cfg.get_long("env.width") == 11);
    CHECK(cfg.get_long("env.height") == 11);
    CHECK(cfg.get_long("run.train_steps") == 40000);
    CHECK(cfg.get_long_list("run.seeds") == std::vector<long>{1, 2, 3});

    Config deep = Config::parse_string(
        "env.name=mountaincar\nagent.name=dqn\nrun.seeds=1,2,3,4,5,6,7,8,9,10\n"
        "run.train_steps=250000\n");
    apply_desk_scale(deep);
    CHECK(deep.get_long("run.train_steps") == 60000);
    CHECK(deep.get_long("dqn.target_update_interval") == 2000);
    CHECK(deep.get_long_list("run.seeds").size() == 3);
}

TEST_CASE("vstar potential arm resolves through value iteration") {
    Config cfg = Config::parse_string(
        "env.name=gridworld\nenv.width=5\nenv.height=5\nagent.name=tabular\n"
        "agent.gamma=0.95\npotential.base=vstar\npotential.bias=0\n"
        "run.seeds=1\nrun.train_steps=100\nrun.eval_interval=0\n");
    const ExperimentConfig ec = resolve_experiment(cfg);
    const PotentialSpec spec = ec.make_potential(0.0);
    REQUIRE(spec.base == PotentialBase::OracleVStar);
    CHECK(potential(spec, State::tabular(ec.grid.index_of(3, 4)), false) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transition log request writes the first run's training log") {
    const auto tmp = std::filesystem::temp_directory_path() / "pbrs_log_test";
    std::filesystem::remove_all(tmp);
    std::filesystem::create_directories(tmp);
    Config cfg = Config::parse_string(kTinyTabular);
    cfg.set("output.dir", (tmp / "out").string());
    cfg.set("run.transition_log", (tmp / "transitions.csv").string());
    run_experiment(cfg);
    std::ifstream f((tmp / "transitions.csv").string());
    REQUIRE(f.good());
    const auto log = read_transition_csv(f);
    CHECK(log.size() == 1200);
    std::filesystem::remove_all(tmp);
}

TEST_CASE("shipped experiment configs parse and resolve") {
    const std::string dir = std::string(TEST_SOURCE_DIR) + "/../configs/";
    for (const char* name :
         {"vstar_gridworld.cfg", "bias_sweep_goal_directed.cfg",
          "bias_sweep_on_step.cfg", "bias_sweep_mountain_car.cfg",
          "bias_sweep_cart_pole.cfg"}) {
        Config cfg = Config::parse_file(dir + name);
        const ExperimentConfig ec = resolve_experiment(cfg);
        CHECK(!ec.seeds.empty());
        CHECK(ec.train_steps > 0);
        // the desk-scale overrides must leave the config resolvable too
        apply_desk_scale(cfg);
        resolve_experiment(cfg);
    }
    // non-run configs at least parse
    for (const char* name : {"audit_gridworld.cfg", "solve_gridworld.cfg", "surface.cfg"})
        Config::parse_file(dir + name);
}

TEST_CASE("the shifted-initialization agent runs through the harness") {
    const auto tmp = std::filesystem::temp_directory_path() / "pbrs_shifted_test";
    std::filesystem::remove_all(tmp);
    Config cfg = Config::parse_string(
        "env.name=gridworld\nenv.width=4\nenv.height=4\n"
        "agent.name=tabular-qinit-shifted\nagent.gamma=0.95\nagent.q_init=-0.01\n"
        "potential.base=vstar\npotential.bias=0\nrun.seeds=1\n"
        "run.train_steps=800\nrun.eval_interval=400\nrun.n_eval=2\n");
    cfg.set("output.dir", (tmp / "out").string());
    const ExperimentOutput out = run_experiment(cfg);
    REQUIRE(out.arms.size() == 1);
    CHECK(out.arms[0].aggregate.rows.size() == 3);
    std::filesystem::remove_all(tmp);

    Config bad = Config::parse_string(
        "env.name=cartpole\nagent.name=dqn\nrun.seeds=1\nrun.train_steps=10\n"
        "run.transition_log=/tmp/nope.csv\n");
    CHECK_THROWS_AS(resolve_experiment(bad), ConfigError);
}
