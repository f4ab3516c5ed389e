/*!
  \file measures.hpp
  \brief Exact query-side complexity measures with witnesses: sensitivity,
  block sensitivity, certificate complexity, Cmin and its closure, decision
  tree depth, alternating number.

  Witness tie-breaking everywhere: lexicographically smallest input under the
  point encoding, then lexicographically smallest coordinate set / block list.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "truth_table.hpp"

namespace boolfun
{

/*! Per-measure arity caps; the searches behind bs/C/Cmin^cl/dt are exponential. */
struct Caps
{
  int block_sensitivity = 12;
  int certificate = 12;
  int cmin_closure = 8;
  int decision_tree = 10;
};

namespace detail
{

inline void require_cap( const TruthTable& t, int cap, const char* what )
{
  if ( t.arity() > cap )
  {
    throw cap_exceeded( std::string( what ) + ": arity " + std::to_string( t.arity() ) + " above cap " + std::to_string( cap ) );
  }
}

/*! All coordinate subsets ordered by size, then set lexicographic order. */
inline std::vector<CoordSet> subsets_by_size( int n )
{
  std::vector<CoordSet> subsets( std::size_t( 1 ) << n );
  for ( std::size_t s = 0; s < subsets.size(); ++s )
  {
    subsets[s] = CoordSet( s );
  }
  std::sort( subsets.begin(), subsets.end(), []( CoordSet a, CoordSet b ) {
    const int pa = std::popcount( a ), pb = std::popcount( b );
    return pa != pb ? pa < pb : set_lex_less( a, b );
  } );
  return subsets;
}

/*! Subsets bucketed by size, set-lex sorted within each bucket. */
inline std::vector<std::vector<CoordSet>> subsets_bucketed( int n )
{
  std::vector<std::vector<CoordSet>> buckets( n + 1 );
  for ( CoordSet s : subsets_by_size( n ) )
  {
    buckets[std::popcount( s )].push_back( s );
  }
  return buckets;
}

} // namespace detail

/*! s(f, x): the number of coordinates whose flip changes the value at x. */
inline int sensitivity_at( const TruthTable& t, Point x )
{
  const bool fx = t.get( x );
  int count = 0;
  for ( int i = 0; i < t.arity(); ++i )
  {
    count += t.get( x ^ ( Point( 1 ) << i ) ) != fx;
  }
  return count;
}

struct IntWitness
{
  int value = 0;
  Point input = 0;
};

/*! s(f) with the lex-first input attaining it. */
inline IntWitness sensitivity( const TruthTable& t )
{
  IntWitness best;
  for ( Point x : points_in_lex_order( t.arity() ) )
  {
    const int s = sensitivity_at( t, x );
    if ( s > best.value )
    {
      best = { s, x };
    }
  }
  return best;
}

/*! \brief Minimal sensitive blocks of x: sensitive sets none of whose proper
  subsets are sensitive, sorted by set lexicographic order. */
inline std::vector<CoordSet> minimal_sensitive_blocks( const TruthTable& t, Point x )
{
  const int n = t.arity();
  const std::size_t size = std::size_t( 1 ) << n;
  const bool fx = t.get( x );
  std::vector<char> sensitive( size ), reach( size );
  for ( std::size_t b = 1; b < size; ++b )
  {
    sensitive[b] = t.get( x ^ Point( b ) ) != fx;
  }
  // reach[b]: some nonempty proper-or-equal subset below b is sensitive
  std::vector<CoordSet> minimal;
  for ( std::size_t b = 1; b < size; ++b )
  {
    bool sub = false;
    for ( int i = 0; i < n && !sub; ++i )
    {
      if ( b >> i & 1 )
      {
        const std::size_t p = b ^ ( std::size_t( 1 ) << i );
        sub = p != 0 && ( sensitive[p] || reach[p] );
      }
    }
    reach[b] = sub;
    if ( sensitive[b] && !sub )
    {
      minimal.push_back( CoordSet( b ) );
    }
  }
  std::sort( minimal.begin(), minimal.end(), set_lex_less );
  return minimal;
}

namespace detail
{

inline void max_packing_rec( const std::vector<CoordSet>& blocks, std::size_t idx, CoordSet used, int count, int& best )
{
  if ( count > best )
  {
    best = count;
  }
  if ( count + int( blocks.size() - idx ) <= best )
  {
    return;
  }
  for ( std::size_t j = idx; j < blocks.size(); ++j )
  {
    if ( !( blocks[j] & used ) )
    {
      max_packing_rec( blocks, j + 1, used | blocks[j], count + 1, best );
    }
  }
}

inline int max_packing( const std::vector<CoordSet>& blocks, std::size_t idx = 0, CoordSet used = 0 )
{
  int best = 0;
  max_packing_rec( blocks, idx, used, 0, best );
  return best;
}

} // namespace detail

struct BlockSensResult
{
  int value = 0;
  Point input = 0;
  std::vector<CoordSet> blocks;
};

/*! bs(f, x): maximum number of pairwise disjoint sensitive blocks, with the
  lex-least packing of minimal blocks as witness. */
inline BlockSensResult block_sensitivity_at( const TruthTable& t, Point x )
{
  const auto minimal = minimal_sensitive_blocks( t, x );
  const int value = detail::max_packing( minimal );
  BlockSensResult res{ value, x, {} };
  CoordSet used = 0;
  for ( std::size_t j = 0; j < minimal.size() && int( res.blocks.size() ) < value; ++j )
  {
    if ( minimal[j] & used )
    {
      continue;
    }
    const int rest = detail::max_packing( minimal, j + 1, used | minimal[j] );
    if ( int( res.blocks.size() ) + 1 + rest == value )
    {
      res.blocks.push_back( minimal[j] );
      used |= minimal[j];
    }
  }
  return res;
}

inline BlockSensResult block_sensitivity( const TruthTable& t, int cap = Caps{}.block_sensitivity )
{
  detail::require_cap( t, cap, "block_sensitivity" );
  BlockSensResult best;
  best.value = -1;
  for ( Point x : points_in_lex_order( t.arity() ) )
  {
    auto r = block_sensitivity_at( t, x );
    if ( r.value > best.value )
    {
      best = std::move( r );
    }
  }
  return best;
}

/*! True iff t is constant on the subcube agreeing with x on the fixed coordinates. */
inline bool constant_on_subcube( const TruthTable& t, CoordSet fixed, Point x )
{
  const Point free = point_mask( t.arity() ) & ~fixed;
  const Point base = x & fixed;
  const bool v = t.get( base | free );
  for ( Point sub = free;; sub = ( sub - 1 ) & free )
  {
    if ( t.get( base | sub ) != v )
    {
      return false;
    }
    if ( sub == 0 )
    {
      return true;
    }
  }
}

struct CertResult
{
  int value = 0;
  Point input = 0;
  CoordSet coords = 0;
};

namespace detail
{

inline CertResult certificate_search( const TruthTable& t, Point x, const std::vector<CoordSet>& subsets )
{
  for ( CoordSet s : subsets )
  {
    if ( constant_on_subcube( t, s, x ) )
    {
      return { std::popcount( s ), x, s };
    }
  }
  return { t.arity(), x, point_mask( t.arity() ) }; // unreachable: the full set always certifies
}

} // namespace detail

/*! C(f, x): smallest coordinate set whose values at x force f constant. */
inline CertResult certificate_at( const TruthTable& t, Point x, int cap = Caps{}.certificate )
{
  detail::require_cap( t, cap, "certificate_at" );
  return detail::certificate_search( t, x, detail::subsets_by_size( t.arity() ) );
}

/*! C(f) = max_x C(f, x). */
inline CertResult certificate( const TruthTable& t, int cap = Caps{}.certificate )
{
  detail::require_cap( t, cap, "certificate" );
  const auto subsets = detail::subsets_by_size( t.arity() );
  CertResult best{ -1, 0, 0 };
  for ( Point x : points_in_lex_order( t.arity() ) )
  {
    auto r = detail::certificate_search( t, x, subsets );
    if ( r.value > best.value )
    {
      best = r;
    }
  }
  return best;
}

/*! Cmin(f) = min_x C(f, x); ties broken by input first, then coordinate set. */
inline CertResult cmin( const TruthTable& t, int cap = Caps{}.certificate )
{
  detail::require_cap( t, cap, "cmin" );
  const int n = t.arity();
  const auto order = points_in_lex_order( n );
  const auto buckets = detail::subsets_bucketed( n );
  for ( int size = 0; size <= n; ++size )
  {
    for ( Point x : order )
    {
      for ( CoordSet s : buckets[size] )
      {
        if ( constant_on_subcube( t, s, x ) )
        {
          return { size, x, s };
        }
      }
    }
  }
  return { n, 0, point_mask( n ) }; // unreachable
}

struct CminClosureResult
{
  int value = 0;
  Restriction witness;
};

/*! Cmin closure: max of Cmin over all 3^n restrictions of t, including t itself. */
inline CminClosureResult cmin_closure( const TruthTable& t, int cap = Caps{}.cmin_closure )
{
  detail::require_cap( t, cap, "cmin_closure" );
  const int n = t.arity();
  auto fixed_sets = detail::subsets_by_size( n );
  CminClosureResult best{ -1, {} };
  for ( CoordSet fixed : fixed_sets )
  {
    std::vector<CoordSet> values;
    for ( CoordSet v = fixed;; v = ( v - 1 ) & fixed )
    {
      values.push_back( v );
      if ( v == 0 )
      {
        break;
      }
    }
    std::sort( values.begin(), values.end(), point_lex_less );
    for ( CoordSet v : values )
    {
      const Restriction r{ fixed, v };
      const int c = cmin( restrict_table( t, r ), max_arity ).value;
      if ( c > best.value )
      {
        best = { c, r };
      }
    }
  }
  return best;
}

/*! \brief Memoized exact decision tree depth.

  The memo is keyed by the induced truth table, so equal subfunctions reached
  by different restrictions share one entry.
*/
class DtSolver
{
public:
  int depth( const TruthTable& t )
  {
    if ( t.is_constant() )
    {
      return 0;
    }
    if ( auto it = memo_.find( t ); it != memo_.end() )
    {
      return it->second;
    }
    int best = t.arity();
    for ( int i = 0; i < t.arity(); ++i )
    {
      const int d0 = depth( cofactor( t, i, false ) );
      if ( d0 + 1 >= best )
      {
        continue;
      }
      const int d1 = depth( cofactor( t, i, true ) );
      best = std::min( best, 1 + std::max( d0, d1 ) );
      if ( best == 1 )
      {
        break;
      }
    }
    memo_.emplace( t, best );
    return best;
  }

  /*! Smallest coordinate achieving the optimal depth at t; t must not be constant. */
  int best_coord( const TruthTable& t )
  {
    const int target = depth( t );
    for ( int i = 0; i < t.arity(); ++i )
    {
      if ( 1 + std::max( depth( cofactor( t, i, false ) ), depth( cofactor( t, i, true ) ) ) == target )
      {
        return i;
      }
    }
    return 0; // unreachable
  }

private:
  std::unordered_map<TruthTable, int, TruthTableHash> memo_;
};

/*! dt(f): minimum depth of a decision tree computing f. */
inline int dt_depth( const TruthTable& t, int cap = Caps{}.decision_tree )
{
  detail::require_cap( t, cap, "dt_depth" );
  DtSolver solver;
  return solver.depth( t );
}

namespace detail
{

/*! DP over immediate predecessors; dp[x] = alt(f, x). */
inline std::vector<int> alt_table( const TruthTable& t )
{
  std::vector<int> dp( t.size(), 0 );
  for ( Point x = 1; x < Point( t.size() ); ++x )
  {
    const bool fx = t.get( x );
    int best = 0;
    for ( int i = 0; i < t.arity(); ++i )
    {
      if ( x >> i & 1 )
      {
        const Point p = x ^ ( Point( 1 ) << i );
        best = std::max( best, dp[p] + ( t.get( p ) != fx ) );
      }
    }
    dp[x] = best;
  }
  return dp;
}

} // namespace detail

/*! alt(f, x): maximum alternations over monotone paths from 0^n to x. */
inline int alt_at( const TruthTable& t, Point x )
{
  return detail::alt_table( t )[x];
}

struct AltResult
{
  int value = 0;
  std::vector<Point> chain; // maximal chain 0^n .. 1^n realizing the value
};

/*! alt(f) = alt(f, 1^n), with a maximal-chain witness. */
inline AltResult alt( const TruthTable& t )
{
  const auto dp = detail::alt_table( t );
  const Point top = point_mask( t.arity() );
  AltResult res{ dp[top], {} };
  Point x = top;
  res.chain.push_back( x );
  while ( x != 0 )
  {
    const bool fx = t.get( x );
    Point next = 0;
    for ( int i = 0; i < t.arity(); ++i )
    {
      if ( x >> i & 1 )
      {
        const Point p = x ^ ( Point( 1 ) << i );
        if ( dp[p] + ( t.get( p ) != fx ) == dp[x] )
        {
          next = p;
          break; // smallest flipped coordinate wins
        }
      }
    }
    x = next;
    res.chain.push_back( x );
  }
  std::reverse( res.chain.begin(), res.chain.end() );
  return res;
}

struct MeasureReport
{
  int n = 0;
  std::string table;
  IntWitness sensitivity;
  BlockSensResult block_sensitivity;
  CertResult certificate;
  CertResult cmin;
  CminClosureResult cmin_closure;
  int dt_depth = 0;
  AltResult alt;
};

inline MeasureReport measure_all( const TruthTable& t, const Caps& caps = {} )
{
  MeasureReport r;
  r.n = t.arity();
  r.table = t.format();
  r.sensitivity = boolfun::sensitivity( t );
  r.block_sensitivity = boolfun::block_sensitivity( t, caps.block_sensitivity );
  r.certificate = boolfun::certificate( t, caps.certificate );
  r.cmin = boolfun::cmin( t, caps.certificate );
  r.cmin_closure = boolfun::cmin_closure( t, caps.cmin_closure );
  r.dt_depth = boolfun::dt_depth( t, caps.decision_tree );
  r.alt = boolfun::alt( t );
  return r;
}

} // namespace boolfun
