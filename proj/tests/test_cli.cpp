#include <cli/commands.hpp>

#include <cubehom/graph.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
namespace code = cubehom::cli::exit_code;

namespace
{
    struct Result
    {
        int status;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Result
    {
        std::ostringstream out, err;
        int status = cubehom::cli::run(args, out, err);
        return {status, out.str(), err.str()};
    }

    auto scratch(const std::string & name) -> std::string
    {
        auto dir = fs::temp_directory_path() / "cubehom_cli_tests";
        fs::create_directories(dir);
        return (dir / name).string();
    }

    auto slurp(const std::string & path) -> std::string
    {
        std::ifstream in(path);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("gen writes graph files")
    {
        auto q3 = run({"gen", "hypercube", "--d", "3"});
        CHECK(q3.status == code::ok);
        std::istringstream in(q3.out);
        auto g = cubehom::read_edge_list(in);
        CHECK(g.order() == 8);
        CHECK(g.size() == 12);

        auto h13 = run({"gen", "setgraph", "--l", "1", "--k", "3"});
        CHECK(h13.status == code::ok);
        std::istringstream in2(h13.out);
        auto h = cubehom::read_edge_list(in2);
        CHECK(h.order() == 6);
        CHECK(h.size() == 6);

        auto a = scratch("r1.txt"), b = scratch("r2.txt");
        CHECK(run({"gen", "random", "--n", "10", "--p", "1/2", "--seed", "1", "--out", a}).status == code::ok);
        CHECK(run({"gen", "random", "--n", "10", "--p", "1/2", "--seed", "1", "--out", b}).status == code::ok);
        CHECK(slurp(a) == slurp(b));
        CHECK_FALSE(slurp(a).empty());

        auto cube = scratch("q3dir.txt");
        CHECK(run({"gen", "direction-coloured-cube", "--d", "3", "--out", cube}).status == code::ok);
        CHECK(fs::exists(cube + ".col"));
    }

    TEST_CASE("bad parameters are input errors")
    {
        CHECK(run({"gen", "hypercube", "--d", "0"}).status == code::input_error);
        CHECK(run({"gen", "setgraph", "--l", "2", "--k", "4"}).status == code::input_error);
        CHECK(run({"gen", "pyramid"}).status == code::input_error);
        CHECK(run({"experiment", "unknown"}).status == code::input_error);
        CHECK(run({"homcount", "--pattern", "Q3", "--host", "/nonexistent/file"}).status == code::input_error);
        CHECK(run({"certify", "K3", "--all-pairs"}).status == code::input_error);
        CHECK(run({}).status == code::input_error);
    }

    TEST_CASE("certify")
    {
        auto q3 = run({"certify", "Q3", "--all-pairs"});
        CHECK(q3.status == code::ok);
        CHECK(q3.out.find("reflective: yes") != std::string::npos);

        auto k22 = run({"certify", "complete-bipartite(2,2)", "--all-pairs"});
        CHECK(k22.status == code::ok);
        CHECK(k22.out.find("reflective: yes") != std::string::npos);

        auto explicit_seq = run({"certify", "Q4", "--r0", "0000,0011", "--method", "explicit", "--format", "json"});
        CHECK(explicit_seq.status == code::ok);
        CHECK(explicit_seq.out.find("\"certified\": \"yes\"") != std::string::npos);
    }

    TEST_CASE("the 2-blowup of C8 is never reported as non-reflective")
    {
        auto path = scratch("c8_blowup.txt");
        {
            std::vector<cubehom::Edge> edges;
            for (int i = 0; i < 8; ++i)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        edges.push_back({2 * i + a, 2 * ((i + 1) % 8) + b});
            std::ofstream out(path);
            cubehom::write_edge_list(out, cubehom::make_graph(16, edges));
        }
        auto r = run({"certify", path, "--all-pairs", "--budget", "2000"});
        CHECK(r.status == code::budget);
        CHECK(r.out.find("reflective: unknown") != std::string::npos);
        CHECK(r.out.find("reflective: no") == std::string::npos);
    }

    TEST_CASE("verify and experiment exit codes")
    {
        CHECK(run({"verify", "section2", "--pattern", "Q3", "--host", "random(10,1/2,seed 3)"}).status == code::ok);
        CHECK(run({"verify", "section3", "--host", "direction-cube(3)", "--k", "2"}).status == code::ok);
        auto tri = run({"verify", "section3", "--host", "triangle-rainbow", "--k", "2"});
        CHECK(tri.status == code::ok);
        auto k12 = run({"verify", "section3", "--host", "K12", "--k", "2", "--format", "json"});
        CHECK(k12.status == code::ok);
        CHECK(k12.out.find("\"cycles_found\"") != std::string::npos);
    }

    TEST_CASE("homcount and h2k")
    {
        auto hom = run({"homcount", "--pattern", "Q3", "--host", "complete-bipartite(4,4)"});
        CHECK(hom.status == code::ok);
        CHECK(hom.out.find("131072") != std::string::npos);
        auto inj = run({"homcount", "--pattern", "C4", "--host", "C4", "--injective"});
        CHECK(inj.status == code::ok);
        CHECK(inj.out.find("8") != std::string::npos);
        auto h = run({"h2k", "--host", "K4", "--k", "2", "--format", "json"});
        CHECK(h.status == code::ok);
        CHECK(h.out.find("28/27") != std::string::npos);
    }

    TEST_CASE("reports are byte-identical across runs")
    {
        std::vector<std::string> args{"experiment", "supersaturation", "--d", "3", "--n", "16", "--p", "1/2", "--trials", "2", "--seed", "4", "--format", "json"};
        auto a = run(args), b = run(args);
        CHECK(a.status == code::ok);
        CHECK(a.out == b.out);
        CHECK(a.out.find("duration") == std::string::npos);
    }
}
