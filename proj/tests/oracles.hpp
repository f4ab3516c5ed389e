// Independent brute-force oracles used to freeze expected values.  These
// deliberately follow the bare definitions and share no search machinery with
// the library implementations they check.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include <boolfun/boolfun.hpp>

namespace oracle
{

using boolfun::CoordSet;
using boolfun::Point;
using boolfun::TruthTable;

// maximum number of disjoint sensitive blocks, trying every sensitive block
// (not only minimal ones) over the remaining coordinates
inline int bs_at( const TruthTable& t, Point x )
{
  const int n = t.arity();
  const bool fx = t.get( x );
  std::map<CoordSet, int> memo;
  const auto rec = [&]( const auto& self, CoordSet avail ) -> int {
    if ( auto it = memo.find( avail ); it != memo.end() )
    {
      return it->second;
    }
    int best = 0;
    // enumerate nonempty submasks of avail
    for ( CoordSet b = avail; b; b = ( b - 1 ) & avail )
    {
      if ( t.get( x ^ Point( b ) ) != fx )
      {
        best = std::max( best, 1 + self( self, avail & ~b ) );
      }
    }
    memo[avail] = best;
    return best;
  };
  return rec( rec, boolfun::point_mask( n ) );
}

inline int bs( const TruthTable& t )
{
  int best = 0;
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    best = std::max( best, bs_at( t, x ) );
  }
  return best;
}

inline bool constant_on( const TruthTable& t, CoordSet fixed, Point x )
{
  bool first = true, value = false;
  for ( Point y = 0; y < Point( t.size() ); ++y )
  {
    if ( ( y & fixed ) != ( x & fixed ) )
    {
      continue;
    }
    if ( first )
    {
      value = t.get( y );
      first = false;
    }
    else if ( t.get( y ) != value )
    {
      return false;
    }
  }
  return true;
}

inline int cert_at( const TruthTable& t, Point x )
{
  const int n = t.arity();
  int best = n;
  for ( CoordSet s = 0; s < CoordSet( 1 ) << n; ++s )
  {
    if ( std::popcount( s ) < best && constant_on( t, s, x ) )
    {
      best = std::popcount( s );
    }
  }
  return best;
}

inline int cert( const TruthTable& t )
{
  int best = 0;
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    best = std::max( best, cert_at( t, x ) );
  }
  return best;
}

inline int cmin( const TruthTable& t )
{
  int best = t.arity();
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    best = std::min( best, cert_at( t, x ) );
  }
  return best;
}

// maximum alternations over all strictly increasing point sequences from x to
// 1^n; every monotone path is such a sequence
inline int alt_dfs( const TruthTable& t )
{
  const Point top = boolfun::point_mask( t.arity() );
  std::map<Point, int> memo;
  const auto rec = [&]( const auto& self, Point cur ) -> int {
    if ( auto it = memo.find( cur ); it != memo.end() )
    {
      return it->second;
    }
    int best = 0;
    for ( Point next = cur + 1; next <= top; ++next )
    {
      if ( boolfun::point_leq( cur, next ) )
      {
        best = std::max( best, ( t.get( next ) != t.get( cur ) ) + self( self, next ) );
      }
    }
    memo[cur] = best;
    return best;
  };
  return t.arity() == 0 ? 0 : rec( rec, 0 );
}

// maximum alternations over the n! maximal chains
inline int alt_maximal_chains( const TruthTable& t )
{
  const int n = t.arity();
  std::vector<int> perm( n );
  std::iota( perm.begin(), perm.end(), 0 );
  int best = 0;
  do
  {
    Point x = 0;
    bool value = t.get( 0 );
    int count = 0;
    for ( int i : perm )
    {
      x |= Point( 1 ) << i;
      if ( t.get( x ) != value )
      {
        ++count;
        value = t.get( x );
      }
    }
    best = std::max( best, count );
  } while ( std::next_permutation( perm.begin(), perm.end() ) );
  return best;
}

inline bool monotone_all_pairs( const TruthTable& t )
{
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    for ( Point y = 0; y < Point( t.size() ); ++y )
    {
      if ( boolfun::point_leq( x, y ) && t.get( x ) && !t.get( y ) )
      {
        return false;
      }
    }
  }
  return true;
}

// decision procedure: does some depth-d tree compute t?
inline bool dt_exists( const TruthTable& t, int d )
{
  if ( t.is_constant() )
  {
    return true;
  }
  if ( d == 0 )
  {
    return false;
  }
  for ( int i = 0; i < t.arity(); ++i )
  {
    if ( dt_exists( boolfun::cofactor( t, i, false ), d - 1 ) && dt_exists( boolfun::cofactor( t, i, true ), d - 1 ) )
    {
      return true;
    }
  }
  return false;
}

inline int dt( const TruthTable& t )
{
  int d = 0;
  while ( !dt_exists( t, d ) )
  {
    ++d;
  }
  return d;
}

inline std::int64_t mobius_coeff( const TruthTable& t, CoordSet s )
{
  std::int64_t sum = 0;
  for ( CoordSet sub = s;; sub = ( sub - 1 ) & s )
  {
    const int sign = ( std::popcount( s ) - std::popcount( sub ) ) % 2 ? -1 : 1;
    sum += sign * std::int64_t( t.get( Point( sub ) ) );
    if ( sub == 0 )
    {
      break;
    }
  }
  return sum;
}

inline std::int64_t fourier_coeff_scaled( const TruthTable& t, CoordSet s )
{
  std::int64_t sum = 0;
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    sum += ( std::popcount( x & s ) % 2 ? -1 : 1 ) * std::int64_t( t.get( x ) );
  }
  return sum;
}

inline bool is_max_term( const TruthTable& t, Point u )
{
  const Point top = boolfun::point_mask( t.arity() );
  if ( u == top || t.get( u ) == t.get( top ) )
  {
    return false;
  }
  for ( Point y = 0; y <= top; ++y )
  {
    if ( boolfun::point_less( u, y ) && t.get( y ) != t.get( top ) )
    {
      return false;
    }
  }
  return true;
}

inline bool is_min_term( const TruthTable& t, Point d )
{
  if ( d == 0 || t.get( d ) == t.get( 0 ) )
  {
    return false;
  }
  for ( Point y = 0; y < d; ++y )
  {
    if ( boolfun::point_less( y, d ) && t.get( y ) != t.get( 0 ) )
    {
      return false;
    }
  }
  return true;
}

// witness re-verification helpers

inline bool blocks_witness_ok( const TruthTable& t, const boolfun::BlockSensResult& r )
{
  CoordSet used = 0;
  for ( CoordSet b : r.blocks )
  {
    if ( b == 0 || ( b & used ) || t.get( r.input ^ Point( b ) ) == t.get( r.input ) )
    {
      return false;
    }
    used |= b;
  }
  return int( r.blocks.size() ) == r.value;
}

inline bool chain_witness_ok( const TruthTable& t, const boolfun::AltResult& r )
{
  if ( r.chain.front() != 0 || r.chain.back() != boolfun::point_mask( t.arity() ) )
  {
    return false;
  }
  int count = 0;
  for ( std::size_t i = 1; i < r.chain.size(); ++i )
  {
    if ( !boolfun::point_less( r.chain[i - 1], r.chain[i] ) )
    {
      return false;
    }
    count += t.get( r.chain[i] ) != t.get( r.chain[i - 1] );
  }
  return count == r.value;
}

} // namespace oracle
