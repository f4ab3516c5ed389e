/*!
  \file serialize.hpp
  \brief JSON and CSV forms of the domain types.

  JSON field order is fixed (ordered_json) so documents are byte-stable;
  points serialize as their integer index, coordinate sets as sorted 1-based
  index arrays, matrices and rectangle masks as uppercase row-major hex.
*/

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "comm.hpp"
#include "extremal.hpp"
#include "families.hpp"
#include "measures.hpp"
#include "spectra.hpp"
#include "truth_table.hpp"
#include "verify.hpp"

namespace boolfun
{

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline json coord_set_json( CoordSet s )
{
  json out = json::array();
  for ( int i = 0; i < 32; ++i )
  {
    if ( s >> i & 1 )
    {
      out.push_back( i + 1 );
    }
  }
  return out;
}

inline std::string mask_hex( std::uint64_t mask, std::uint64_t bits )
{
  const std::uint64_t digits = ( bits + 3 ) / 4;
  std::string out;
  for ( std::uint64_t p = 0; p < digits; ++p )
  {
    const int d = int( mask >> ( 4 * ( digits - 1 - p ) ) & 0xF );
    out += "0123456789ABCDEF"[d];
  }
  return out;
}

inline std::string fixed4( double v )
{
  char buf[32];
  std::snprintf( buf, sizeof buf, "%.4f", v );
  return buf;
}

inline json to_json( const Restriction& r )
{
  json fixed = json::array(), values = json::array();
  for ( int i = 0; i < 32; ++i )
  {
    if ( r.fixes( i ) )
    {
      fixed.push_back( i + 1 );
      values.push_back( r.values >> i & 1 );
    }
  }
  return json{ { "fixed", fixed }, { "values", values } };
}

inline json to_json( const Spectrum& sp )
{
  json coeffs = json::object();
  for ( std::size_t s = 0; s < sp.coeffs.size(); ++s )
  {
    if ( sp.coeffs[s] != 0 )
    {
      coeffs[std::to_string( s )] = sp.coeffs[s];
    }
  }
  const char* kind = sp.kind == SpectrumKind::mobius ? "mobius" : sp.kind == SpectrumKind::fourier_scaled ? "fourier_scaled" : "anf";
  return json{ { "kind", kind }, { "n", sp.n }, { "coeffs", coeffs } };
}

inline json to_json( const MeasureReport& r )
{
  json blocks = json::array();
  for ( CoordSet b : r.block_sensitivity.blocks )
  {
    blocks.push_back( coord_set_json( b ) );
  }
  return json{
    { "sensitivity", { { "value", r.sensitivity.value }, { "witness_input", r.sensitivity.input } } },
    { "block_sensitivity", { { "value", r.block_sensitivity.value }, { "witness_input", r.block_sensitivity.input }, { "blocks", blocks } } },
    { "certificate", { { "value", r.certificate.value }, { "witness_input", r.certificate.input }, { "coords", coord_set_json( r.certificate.coords ) } } },
    { "cmin", { { "value", r.cmin.value }, { "witness_input", r.cmin.input }, { "coords", coord_set_json( r.cmin.coords ) } } },
    { "cmin_closure", { { "value", r.cmin_closure.value }, { "witness_restriction", to_json( r.cmin_closure.witness ) } } },
    { "dt_depth", r.dt_depth },
    { "alt", { { "value", r.alt.value }, { "chain", r.alt.chain } } },
  };
}

inline json to_json( const TermSet& ts )
{
  return json{ { "max_terms", ts.max_terms }, { "min_terms", ts.min_terms } };
}

inline json tree_json( const DecisionTree& tree, int at )
{
  const auto& node = tree.nodes[at];
  if ( node.coord < 0 )
  {
    return json{ { "leaf", int( node.value ) } };
  }
  return json{ { "query", node.coord + 1 },
               { "if0", tree_json( tree, node.child0 ) },
               { "if1", tree_json( tree, node.child1 ) } };
}

inline json to_json( const DecisionTree& tree )
{
  return tree_json( tree, tree.root );
}

inline json to_json( const TheoremVerdict& v )
{
  json out{ { "id", v.id }, { "applicable", v.applicable } };
  if ( v.applicable )
  {
    out["holds"] = v.holds;
    out["lhs"] = v.lhs;
    out["rhs"] = v.rhs;
    out["slack"] = v.slack;
    if ( v.ratio_den > 0 )
    {
      out["ratio"] = fixed4( double( v.ratio_num ) / double( v.ratio_den ) );
    }
    if ( !v.note.empty() )
    {
      out["note"] = v.note;
    }
  }
  return out;
}

inline json to_json( const CommMatrix& m )
{
  json rows = json::array();
  for ( auto r : m.rows )
  {
    rows.push_back( mask_hex( r, m.dim() ) );
  }
  return json{ { "composition", composition_name( m.comp ) }, { "n", m.n }, { "rows", rows } };
}

inline json to_json( const Cover& c, std::uint64_t dim )
{
  json rects = json::array();
  for ( const auto& r : c.rects )
  {
    rects.push_back( json{ { "rows", mask_hex( r.rows, dim ) },
                           { "cols", mask_hex( r.cols, dim ) },
                           { "tag", provenance_name( r.prov ) } } );
  }
  json levels = json::array();
  for ( const auto& l : c.levels )
  {
    levels.push_back( json{ { "depth", l.depth },
                            { "device", l.via_min_terms ? "minterm" : "maxterm" },
                            { "terms", l.terms },
                            { "mono", l.mono },
                            { "rects", l.rects_total },
                            { "max_sub_rects", l.max_sub_rects } } );
  }
  return json{ { "target", c.target }, { "size", c.rects.size() }, { "rectangles", rects }, { "levels", levels } };
}

inline json to_json( const Transcript& tr )
{
  json msgs = json::array();
  for ( const auto& m : tr.msgs )
  {
    msgs.push_back( json{ { "speaker", std::string( 1, m.speaker ) }, { "bit", int( m.bit ) } } );
  }
  return json{ { "cost", tr.cost() }, { "messages", msgs } };
}

inline json to_json( const RankIdentityReport& r )
{
  return json{ { "xor_rank", r.xor_rank },
               { "fourier_sparsity", r.fourier_sparsity },
               { "xor_holds", r.xor_holds() },
               { "and_rank", r.and_rank },
               { "mono_sparsity", r.mono_sparsity },
               { "and_holds", r.and_holds() } };
}

inline json to_json( const CompositionBounds& b )
{
  return json{ { "rank", b.rank },
               { "cover1", b.cover1 },
               { "log_rank", b.log_rank },
               { "log_cover1", b.log_cover1 },
               { "lovasz_bound", b.lovasz_bound },
               { "trivial", b.trivial } };
}

inline json to_json( const LovaszReport& r )
{
  json out{ { "n", r.n },
            { "table", r.table },
            { "and", to_json( r.and_side ) },
            { "xor", to_json( r.xor_side ) },
            { "dt", r.dt },
            { "alt", r.alt },
            { "protocol_cost", r.protocol_cost },
            { "alt_xor_bound", r.alt_xor_bound },
            { "minterm_cover_applicable", r.minterm_cover_applicable } };
  if ( r.minterm_cover_applicable )
  {
    out["minterm_cover_size"] = r.minterm_cover_size;
    out["minterm_cover_negated"] = r.minterm_cover_negated;
  }
  return out;
}

inline json to_json( const SweepResult& r )
{
  json per = json::array();
  for ( const auto& st : r.per_theorem )
  {
    json row{ { "id", st.id },
              { "checked", st.checked },
              { "holds", st.holds },
              { "violations", st.violations } };
    if ( st.ratio_den > 0 )
    {
      row["max_ratio"] = fixed4( double( st.ratio_num ) / double( st.ratio_den ) );
      row["max_ratio_witness"] = st.witness;
    }
    per.push_back( row );
  }
  json violations = json::array();
  for ( const auto& v : r.violations )
  {
    violations.push_back( json{ { "function", v.function }, { "theorem", v.theorem }, { "lhs", v.lhs }, { "rhs", v.rhs } } );
  }
  return json{ { "schema_version", schema_version },
               { "space", r.space },
               { "theorems", r.theorems },
               { "functions", r.functions },
               { "violation_count", r.violations.size() },
               { "violations", violations },
               { "per_theorem", per } };
}

inline std::string csv_quote( const std::string& s )
{
  std::string out = "\"";
  for ( char c : s )
  {
    if ( c == '"' )
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv( const SweepResult& r )
{
  std::string out = "theorem,checked,holds,violations,max_ratio,witness\n";
  for ( const auto& st : r.per_theorem )
  {
    out += st.id + "," + std::to_string( st.checked ) + "," + std::to_string( st.holds ) + "," + std::to_string( st.violations );
    if ( st.ratio_den > 0 )
    {
      out += "," + fixed4( double( st.ratio_num ) / double( st.ratio_den ) ) + "," + csv_quote( st.witness );
    }
    else
    {
      out += ",,";
    }
    out += "\n";
  }
  return out;
}

/*! The full single-function report behind `measure`. */
inline json measure_document( const std::string& spec, const TruthTable& t, const Caps& caps = {} )
{
  const MeasureReport report = measure_all( t, caps );
  json theorems = json::array();
  for ( const auto& v : check_all( t, caps ) )
  {
    theorems.push_back( to_json( v ) );
  }
  return json{
    { "schema_version", schema_version },
    { "function", { { "spec", spec }, { "n", t.arity() }, { "table", t.format() } } },
    { "measures", to_json( report ) },
    { "spectra", { { "mono", mono_sparsity( t ) }, { "fourier_sparsity", fourier_sparsity( t ) }, { "deg2", deg2( t ) } } },
    { "terms", to_json( find_terms( t ) ) },
    { "theorems", theorems },
  };
}

/*! Rank identities, covers, bound report, and protocol spot checks behind `comm`. */
inline json comm_document( const std::string& spec, const TruthTable& t, bool include_and, bool include_xor, const Caps& caps = {} )
{
  json out{
    { "schema_version", schema_version },
    { "function", { { "spec", spec }, { "n", t.arity() }, { "table", t.format() } } },
    { "rank_identities", to_json( verify_rank_identities( t ) ) },
  };
  const DecisionTree tree = optimal_decision_tree( t, caps.decision_tree );
  const int dt = tree.depth();
  for ( int side = 0; side < 2; ++side )
  {
    const bool is_and = side == 0;
    if ( ( is_and && !include_and ) || ( !is_and && !include_xor ) )
    {
      continue;
    }
    const Composition comp = is_and ? Composition::and_comp : Composition::xor_comp;
    const CommMatrix m = build_comm_matrix( t, comp );
    json section{ { "matrix", to_json( m ) }, { "rank", exact_rank( m ) } };
    if ( m.dim() <= cover_dimension_cap )
    {
      section["cover1_exact"] = exact_cover_number( m, true );
      section["cover0_exact"] = exact_cover_number( m, false );
    }
    if ( is_and )
    {
      const TruthTable base = t.get( 0 ) ? negate_output( t ) : t;
      try
      {
        const Cover cover = minterm_cover( base );
        section["minterm_cover"] = to_json( cover, m.dim() );
        section["minterm_cover_negated"] = t.get( 0 );
      }
      catch ( const cover_not_constructible& e )
      {
        section["minterm_cover"] = json{ { "applicable", false }, { "reason", e.what() } };
      }
    }
    // protocol spot checks: every pair at n <= 3, the first 64 pairs row-major above
    json checks = json::array();
    std::uint64_t shown = 0;
    bool all_ok = true;
    for ( Point x = 0; x < Point( t.size() ) && shown < 64; ++x )
    {
      for ( Point y = 0; y < Point( t.size() ) && shown < 64; ++y, ++shown )
      {
        const auto [output, transcript] = simulate_tree_protocol( tree, comp, x, y );
        const bool expected = t.get( is_and ? ( x & y ) : ( x ^ y ) );
        all_ok = all_ok && output == expected && transcript.cost() <= 2 * std::size_t( dt );
        if ( shown < 4 )
        {
          checks.push_back( json{ { "x", x }, { "y", y }, { "output", int( output ) }, { "transcript", to_json( transcript ) } } );
        }
      }
    }
    section["protocol"] = json{ { "dt", dt }, { "cost_bound", 2 * dt }, { "checked_pairs", shown }, { "all_correct", all_ok }, { "samples", checks } };
    out[is_and ? "and" : "xor"] = section;
  }
  if ( t.arity() <= lovasz_arity_cap )
  {
    out["lovasz"] = to_json( lovasz_bound_report( t ) );
  }
  return out;
}

} // namespace boolfun
