#include "ncdisco/error.hpp"
#include "ncdisco/graph_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ncdisco;

namespace {

MixedGraph parse(const std::string& text, GraphKind kind = GraphKind::cpdag,
                 GraphFormat format = GraphFormat::detect) {
    std::istringstream in(text);
    return parse_graph(in, format, kind);
}

std::string write(const MixedGraph& g, GraphFormat f = GraphFormat::edge_list) {
    std::ostringstream out;
    write_graph(out, g, f);
    return out.str();
}

std::string error_of(const std::string& text, GraphKind kind = GraphKind::cpdag) {
    try {
        parse(text, kind);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(ParseGraph, SingleDirectedRow) {
    const auto g = parse("X1,X2,directed\n", GraphKind::dag);
    EXPECT_EQ(g.size(), 2);
    EXPECT_TRUE(g.has_directed(0, 1));
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"X1", "X2"}));
}

TEST(ParseGraph, FiveNodeTruthFixture) {
    const auto g = read_graph(oracle::fixture("five_node_truth.csv"), GraphFormat::detect, GraphKind::dag);
    EXPECT_EQ(g.size(), 5);
    EXPECT_EQ(g.edge_count(), 8u);
}

TEST(ParseGraph, HeaderTokensCommentsAndIsolatedNodes) {
    const auto g = parse("from,to,type\n# comment\n\nA\nB , C , -->\nC,D,---\nE\n");
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"A", "B", "C", "D", "E"}));
    EXPECT_TRUE(g.has_directed(1, 2));
    EXPECT_TRUE(g.has_undirected(2, 3));
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(parse("a,b,DIRECTED\n").has_directed(0, 1));
}

TEST(ParseGraph, Errors) {
    EXPECT_NE(error_of("X1,X1,directed\n").find("self-loop"), std::string::npos);
    EXPECT_NE(error_of("a,b,directed\nb,a,directed\n").find("duplicate"), std::string::npos);
    EXPECT_NE(error_of("a,b,bidirected\n").find("unknown edge type"), std::string::npos);
    EXPECT_NE(error_of("a,b\n").find("malformed"), std::string::npos);
    EXPECT_NE(error_of("a,b,directed\nb,c,directed\nc,a,directed\n", GraphKind::dag).find("cycle"),
              std::string::npos);
    EXPECT_NE(error_of("a,b,undirected\n", GraphKind::dag).find("undirected"), std::string::npos);
    EXPECT_NE(error_of("from,to,type\nx,y,directed\nx,x,->\n").find(":3:"), std::string::npos);
    EXPECT_THROW(read_graph("/nonexistent/graph.csv", GraphFormat::detect, GraphKind::dag), InputError);
}

TEST(ParseGraph, MatrixFormat) {
    const auto g = parse(",a,b,c\na,0,1,1\nb,0,0,1\nc,1,0,0\n");
    EXPECT_TRUE(g.has_directed(0, 1));
    EXPECT_TRUE(g.has_undirected(0, 2));
    EXPECT_TRUE(g.has_directed(1, 2));
    EXPECT_THROW(parse(",a,b\na,0,2\nb,0,0\n"), InputError);
    EXPECT_THROW(parse(",a,b\nb,0,1\na,0,0\n"), InputError);
    EXPECT_THROW(parse(",a,b\na,1,0\nb,0,0\n"), InputError);
    EXPECT_THROW(parse(",a,b\na,0,1\n"), InputError);
}

TEST(WriteGraph, CanonicalRoundTrip) {
    const std::string messy = "C,A,->\nB\nA,B,undirected\n";
    const auto g = parse(messy);
    const std::string canonical = write(g);
    EXPECT_EQ(canonical, "from,to,type\nC\nA\nB\nC,A,directed\nA,B,undirected\n");
    EXPECT_EQ(write(parse(canonical)), canonical);
    const std::string matrix = write(g, GraphFormat::matrix);
    EXPECT_EQ(matrix, ",C,A,B\nC,0,1,0\nA,0,0,1\nB,0,1,0\n");
    EXPECT_EQ(parse(matrix), g);
}

TEST(AlignTo, ReordersByLabel) {
    const auto g = parse("b,a,directed\nc\n");
    const auto aligned = align_to(g, {"a", "b", "c"});
    EXPECT_TRUE(aligned.has_directed(1, 0));
    EXPECT_EQ(aligned.labels(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(AlignTo, MismatchListsLabels) {
    const auto g = parse("a,b,directed\nz\n");
    try {
        align_to(g, {"a", "b", "c"});
        FAIL();
    } catch (const InputError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("only in reference: c"), std::string::npos) << msg;
        EXPECT_NE(msg.find("only in other graph: z"), std::string::npos) << msg;
    }
}

TEST(GraphFormat, Names) {
    EXPECT_EQ(parse_graph_format("matrix"), GraphFormat::matrix);
    EXPECT_EQ(to_string(GraphFormat::edge_list), "edge-list");
    EXPECT_THROW(parse_graph_format("dot"), InputError);
}
