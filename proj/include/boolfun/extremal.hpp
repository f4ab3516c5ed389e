/*!
  \file extremal.hpp
  \brief Max/min terms, the inductive extreme-point certificate builder, and
  decision trees built from minimum certificates.
*/

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "measures.hpp"
#include "spectra.hpp"
#include "truth_table.hpp"

namespace boolfun
{

/*!
  Max terms: points u != 1^n with f(u) != f(1^n) and f constant = f(1^n)
  strictly above u.  Min terms dually against 0^n.  Both lists are point-lex
  sorted; terms within a list are pairwise incomparable.
*/
struct TermSet
{
  std::vector<Point> max_terms;
  std::vector<Point> min_terms;
};

/*! Complete enumeration via two constant-above/constant-below sweeps. */
inline TermSet find_terms( const TruthTable& t )
{
  const int n = t.arity();
  const Point top = point_mask( n );
  const bool v1 = t.get( top );
  const bool v0 = t.get( 0 );
  std::vector<char> above_ok( t.size() ), below_ok( t.size() );
  TermSet res;
  for ( Point x = top;; --x )
  {
    bool ok = true;
    for ( int i = 0; i < n && ok; ++i )
    {
      if ( !( x >> i & 1 ) )
      {
        const Point y = x | Point( 1 ) << i;
        ok = above_ok[y] && t.get( y ) == v1;
      }
    }
    above_ok[x] = ok;
    if ( ok && x != top && t.get( x ) != v1 )
    {
      res.max_terms.push_back( x );
    }
    if ( x == 0 )
    {
      break;
    }
  }
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    bool ok = true;
    for ( int i = 0; i < n && ok; ++i )
    {
      if ( x >> i & 1 )
      {
        const Point y = x ^ Point( 1 ) << i;
        ok = below_ok[y] && t.get( y ) == v0;
      }
    }
    below_ok[x] = ok;
    if ( ok && x != 0 && t.get( x ) != v0 )
    {
      res.min_terms.push_back( x );
    }
  }
  std::sort( res.max_terms.begin(), res.max_terms.end(), point_lex_less );
  std::sort( res.min_terms.begin(), res.min_terms.end(), point_lex_less );
  return res;
}

/*! \brief The point-lex smallest max term.

  The zero set S0(u) of the choice is sensitive at u, so |S0(u)| <= s(f), and
  the restriction above u has an odd number of 1-inputs, so its GF(2) degree
  equals |S0(u)|; both are checked here.
*/
inline Point max_term_choice( const TruthTable& t )
{
  if ( t.is_constant() )
  {
    throw std::invalid_argument( "constant function has no max term" );
  }
  const auto terms = find_terms( t );
  const Point u = terms.max_terms.front();
  const int s0 = t.arity() - std::popcount( u );
  if ( s0 > sensitivity( t ).value )
  {
    throw std::logic_error( "max term zero set exceeds sensitivity" );
  }
  if ( deg2( restrict_table( t, Restriction::above( u ) ) ) != s0 )
  {
    throw std::logic_error( "restriction above max term has wrong GF(2) degree" );
  }
  return u;
}

enum class Extreme
{
  zero,
  one
};

namespace detail
{

inline CoordSet extreme_certificate_rec( const TruthTable& t, const std::vector<int>& coord_map )
{
  if ( t.is_constant() )
  {
    return 0;
  }
  const Point u = max_term_choice( t );
  const CoordSet s0 = ~u & point_mask( t.arity() );
  CoordSet out = 0;
  for ( int i = 0; i < t.arity(); ++i )
  {
    if ( s0 >> i & 1 )
    {
      out |= CoordSet( 1 ) << coord_map[i];
    }
  }
  std::vector<int> sub_map;
  for ( int i = 0; i < t.arity(); ++i )
  {
    if ( u >> i & 1 )
    {
      sub_map.push_back( coord_map[i] );
    }
  }
  return out | extreme_certificate_rec( restrict_table( t, Restriction::under( u, t.arity() ) ), sub_map );
}

} // namespace detail

/*! \brief Certificate for f at 0^n (or 1^n) built by the max-term induction.

  Each round adds the zero set S0(u) of a max term and recurses under u; the
  1^n side reuses the same machinery on g(x) = f(~x).  The returned set is
  re-verified to fix the function together with the extreme input's values.
*/
inline CoordSet certificate_at_extreme( const TruthTable& t, Extreme end, int cap = Caps{}.certificate )
{
  detail::require_cap( t, cap, "certificate_at_extreme" );
  std::vector<int> identity( t.arity() );
  for ( int i = 0; i < t.arity(); ++i )
  {
    identity[i] = i;
  }
  const TruthTable& base = t;
  const TruthTable flipped = end == Extreme::one ? flip_all_inputs( t ) : TruthTable();
  const CoordSet cert = detail::extreme_certificate_rec( end == Extreme::one ? flipped : base, identity );
  const Point anchor = end == Extreme::one ? point_mask( t.arity() ) : 0;
  if ( !constant_on_subcube( t, cert, anchor ) )
  {
    throw std::logic_error( "extreme certificate fails to fix the function" );
  }
  return cert;
}

/*!
  Binary decision tree over the source function's coordinates.  Nodes live in
  a flat vector; `coord == -1` marks a leaf carrying `value`.
*/
struct DecisionTree
{
  struct Node
  {
    int coord = -1;
    bool value = false;
    int child0 = -1;
    int child1 = -1;
  };

  std::vector<Node> nodes;
  int root = -1;

  bool evaluate( Point x ) const
  {
    int at = root;
    while ( nodes[at].coord >= 0 )
    {
      at = ( x >> nodes[at].coord & 1 ) ? nodes[at].child1 : nodes[at].child0;
    }
    return nodes[at].value;
  }

  int depth() const { return depth_below( root ); }

private:
  int depth_below( int at ) const
  {
    if ( nodes[at].coord < 0 )
    {
      return 0;
    }
    return 1 + std::max( depth_below( nodes[at].child0 ), depth_below( nodes[at].child1 ) );
  }
};

namespace detail
{

struct TreeBuilder
{
  DecisionTree tree;

  int leaf( bool v )
  {
    tree.nodes.push_back( { -1, v, -1, -1 } );
    return int( tree.nodes.size() ) - 1;
  }

  int node( int coord, int c0, int c1 )
  {
    tree.nodes.push_back( { coord, false, c0, c1 } );
    return int( tree.nodes.size() ) - 1;
  }
};

inline std::vector<int> drop_coord( const std::vector<int>& map, int coord )
{
  std::vector<int> out;
  out.reserve( map.size() - 1 );
  for ( std::size_t i = 0; i < map.size(); ++i )
  {
    if ( int( i ) != coord )
    {
      out.push_back( map[i] );
    }
  }
  return out;
}

inline int greedy_tree_rec( TreeBuilder& b, const TruthTable& t, const std::vector<int>& coord_map )
{
  if ( t.is_constant() )
  {
    return b.leaf( t.get( 0 ) );
  }
  // query every coordinate of a minimum certificate, lowest index first
  const CertResult c = cmin( t, max_arity );
  std::vector<int> coords;
  for ( int i = 0; i < t.arity(); ++i )
  {
    if ( c.coords >> i & 1 )
    {
      coords.push_back( i );
    }
  }
  struct Frame
  {
    TruthTable table;
    std::vector<int> map;
  };
  // split on the certificate coordinates one at a time; after the last one the
  // branch agreeing with the witness input is constant and bottoms out above
  const auto split = [&]( const auto& self, const TruthTable& cur, const std::vector<int>& map, std::size_t idx ) -> int {
    if ( idx == coords.size() )
    {
      return greedy_tree_rec( b, cur, map );
    }
    const int local = coords[idx] - int( idx ); // earlier splits removed lower coords
    const int c0 = self( self, cofactor( cur, local, false ), drop_coord( map, local ), idx + 1 );
    const int c1 = self( self, cofactor( cur, local, true ), drop_coord( map, local ), idx + 1 );
    return b.node( map[local], c0, c1 );
  };
  return split( split, t, coord_map, 0 );
}

} // namespace detail

/*! \brief Greedy decision tree: repeatedly query a minimum certificate of the
  current restriction.  Depth is bounded by Cmin-closure times GF(2) degree. */
inline DecisionTree build_dt_via_min_certificates( const TruthTable& t, int cap = Caps{}.decision_tree )
{
  detail::require_cap( t, cap, "build_dt_via_min_certificates" );
  detail::TreeBuilder b;
  std::vector<int> identity( t.arity() );
  for ( int i = 0; i < t.arity(); ++i )
  {
    identity[i] = i;
  }
  b.tree.root = detail::greedy_tree_rec( b, t, identity );
  return b.tree;
}

namespace detail
{

inline int optimal_tree_rec( TreeBuilder& b, DtSolver& solver, const TruthTable& t, const std::vector<int>& coord_map )
{
  if ( t.is_constant() )
  {
    return b.leaf( t.get( 0 ) );
  }
  const int i = solver.best_coord( t );
  const int c0 = optimal_tree_rec( b, solver, cofactor( t, i, false ), drop_coord( coord_map, i ) );
  const int c1 = optimal_tree_rec( b, solver, cofactor( t, i, true ), drop_coord( coord_map, i ) );
  return b.node( coord_map[i], c0, c1 );
}

} // namespace detail

/*! A depth-optimal decision tree: depth() == dt_depth(t). */
inline DecisionTree optimal_decision_tree( const TruthTable& t, int cap = Caps{}.decision_tree )
{
  detail::require_cap( t, cap, "optimal_decision_tree" );
  detail::TreeBuilder b;
  DtSolver solver;
  std::vector<int> identity( t.arity() );
  for ( int i = 0; i < t.arity(); ++i )
  {
    identity[i] = i;
  }
  b.tree.root = detail::optimal_tree_rec( b, solver, t, identity );
  return b.tree;
}

} // namespace boolfun
