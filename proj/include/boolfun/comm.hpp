/*!
  \file comm.hpp
  \brief Communication-side objects for bit-wise composed functions: the
  2^n x 2^n matrices of f(x AND y) / f(x XOR y), exact integer rank, the
  rank identities, covers built from min/max terms, exact cover numbers,
  and decision-tree-derived protocols.

  Nothing in this module touches floating point except the log values in the
  numeric bound report; every decision is made on exact integers.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "extremal.hpp"
#include "measures.hpp"
#include "spectra.hpp"
#include "truth_table.hpp"

namespace boolfun
{

enum class Composition
{
  and_comp,
  xor_comp
};

inline const char* composition_name( Composition c )
{
  return c == Composition::and_comp ? "and" : "xor";
}

struct cover_not_constructible : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inline constexpr int comm_arity_cap = 6;        // matrices are 2^n x 2^n
inline constexpr int cover_dimension_cap = 16;  // exact set cover budget

/*! Bit matrix with entry (x, y) = f(x AND y) or f(x XOR y); bit y of rows[x]. */
struct CommMatrix
{
  Composition comp = Composition::and_comp;
  int n = 0;
  std::vector<std::uint64_t> rows;

  std::uint64_t dim() const { return std::uint64_t( 1 ) << n; }

  bool entry( Point x, Point y ) const { return rows[x] >> y & 1; }
};

inline CommMatrix build_comm_matrix( const TruthTable& t, Composition comp, int cap = comm_arity_cap )
{
  detail::require_cap( t, cap, "build_comm_matrix" );
  CommMatrix m{ comp, t.arity(), {} };
  m.rows.assign( t.size(), 0 );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    for ( Point y = 0; y < Point( t.size() ); ++y )
    {
      const Point z = comp == Composition::and_comp ? ( x & y ) : ( x ^ y );
      if ( t.get( z ) )
      {
        m.rows[x] |= std::uint64_t( 1 ) << y;
      }
    }
  }
  return m;
}

/*! \brief Exact rank over the rationals via fraction-free (Bareiss) elimination.

  Intermediate entries are minors of the 0/1 matrix, which overflow machine
  words already at moderate sizes, hence the arbitrary-precision integers.
*/
inline std::uint64_t exact_rank( const CommMatrix& m )
{
  using Int = boost::multiprecision::cpp_int;
  const std::size_t dim = m.dim();
  std::vector<Int> a( dim * dim );
  for ( std::size_t x = 0; x < dim; ++x )
  {
    for ( std::size_t y = 0; y < dim; ++y )
    {
      a[x * dim + y] = int( m.entry( Point( x ), Point( y ) ) );
    }
  }
  std::uint64_t rank = 0;
  std::size_t row = 0;
  Int prev = 1;
  for ( std::size_t col = 0; col < dim && row < dim; ++col )
  {
    std::size_t pivot = row;
    while ( pivot < dim && a[pivot * dim + col] == 0 )
    {
      ++pivot;
    }
    if ( pivot == dim )
    {
      continue;
    }
    if ( pivot != row )
    {
      for ( std::size_t y = 0; y < dim; ++y )
      {
        std::swap( a[pivot * dim + y], a[row * dim + y] );
      }
    }
    const Int p = a[row * dim + col];
    for ( std::size_t i = row + 1; i < dim; ++i )
    {
      for ( std::size_t y = col + 1; y < dim; ++y )
      {
        a[i * dim + y] = ( a[i * dim + y] * p - a[i * dim + col] * a[row * dim + y] ) / prev;
      }
      a[i * dim + col] = 0;
    }
    prev = p;
    ++rank;
    ++row;
  }
  return rank;
}

/*! Both identities: rank of the XOR matrix vs Fourier sparsity, rank of the
  AND matrix vs Moebius sparsity.  A mismatch is reported, never thrown. */
struct RankIdentityReport
{
  std::uint64_t xor_rank = 0;
  std::uint64_t fourier_sparsity = 0;
  std::uint64_t and_rank = 0;
  std::uint64_t mono_sparsity = 0;

  bool xor_holds() const { return xor_rank == fourier_sparsity; }
  bool and_holds() const { return and_rank == mono_sparsity; }
  bool holds() const { return xor_holds() && and_holds(); }
};

inline RankIdentityReport verify_rank_identities( const TruthTable& t, int cap = comm_arity_cap )
{
  detail::require_cap( t, cap, "verify_rank_identities" );
  RankIdentityReport r;
  r.xor_rank = exact_rank( build_comm_matrix( t, Composition::xor_comp, cap ) );
  r.fourier_sparsity = boolfun::fourier_sparsity( t );
  r.and_rank = exact_rank( build_comm_matrix( t, Composition::and_comp, cap ) );
  r.mono_sparsity = boolfun::mono_sparsity( t );
  return r;
}

enum class Provenance
{
  minterm,
  maxterm_cell,
  recursive
};

inline const char* provenance_name( Provenance p )
{
  switch ( p )
  {
  case Provenance::minterm:
    return "minterm";
  case Provenance::maxterm_cell:
    return "maxterm-cell";
  default:
    return "recursive";
  }
}

/*! Combinatorial rectangle as row/column index masks over a 2^n x 2^n matrix. */
struct Rectangle
{
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  Provenance prov = Provenance::recursive;
};

/*! Construction log entry for one recursion node of the cover builder. */
struct CoverLevel
{
  int depth = 0;
  bool via_min_terms = true;
  std::size_t terms = 0;
  std::uint64_t mono = 0;        // Moebius sparsity of the node's subfunction
  std::size_t rects_total = 0;   // rectangles returned by this node
  std::size_t max_sub_rects = 0; // largest per-term recursive cover
};

struct Cover
{
  int target = 1;
  std::vector<Rectangle> rects;
  std::vector<CoverLevel> levels;
};

namespace detail
{

/*! Rectangle in progress: partial assignments for the two sides over the
  original coordinates.  fresh until a device first constrains it. */
struct PairRect
{
  Restriction x_fix, y_fix;
  bool fresh = true;
  Provenance prov = Provenance::recursive;
};

inline void tag( PairRect& r, Provenance device )
{
  r.prov = r.fresh ? device : Provenance::recursive;
  r.fresh = false;
}

inline bool matches( Point x, const Restriction& r )
{
  return ( x & r.fixed ) == r.values;
}

inline std::vector<PairRect> cover_rec( const TruthTable& h, bool target, const std::vector<int>& coord_map,
                                        int depth, int alt_budget, std::vector<CoverLevel>& levels )
{
  if ( h.is_constant() )
  {
    if ( h.get( 0 ) == target )
    {
      return { PairRect{} };
    }
    return {};
  }
  if ( alt_budget <= 0 )
  {
    throw std::logic_error( "cover recursion exceeded the alternating number" );
  }
  const int n = h.arity();
  const Point top = point_mask( n );
  const auto terms = find_terms( h );
  std::vector<PairRect> out;
  CoverLevel level;
  level.depth = depth;
  if ( h.get( 0 ) != target )
  {
    // every target-input lies above a min term; fix x = y = 1 on its support
    level.via_min_terms = true;
    level.terms = terms.min_terms.size();
    level.mono = mono_sparsity( h );
    if ( level.terms > level.mono )
    {
      throw std::logic_error( "more min terms than Moebius sparsity" );
    }
    for ( const Point d : terms.min_terms )
    {
      std::vector<int> sub_map;
      for ( int i = 0; i < n; ++i )
      {
        if ( !( d >> i & 1 ) )
        {
          sub_map.push_back( coord_map[i] );
        }
      }
      const TruthTable sub = restrict_table( h, Restriction::above( d ) );
      if ( alt( sub ).value > alt_budget - 1 )
      {
        throw std::logic_error( "min-term restriction failed to reduce alt" );
      }
      auto rects = cover_rec( sub, target, sub_map, depth + 1, alt_budget - 1, levels );
      level.max_sub_rects = std::max( level.max_sub_rects, rects.size() );
      for ( auto& r : rects )
      {
        for ( int i = 0; i < n; ++i )
        {
          if ( d >> i & 1 )
          {
            r.x_fix.fix( coord_map[i], true );
            r.y_fix.fix( coord_map[i], true );
          }
        }
        tag( r, Provenance::minterm );
        out.push_back( std::move( r ) );
      }
    }
  }
  else if ( h.get( top ) != target )
  {
    // every target-input lies under a max term; 3^k cells kill its zero set
    level.via_min_terms = false;
    level.terms = terms.max_terms.size();
    level.mono = mono_sparsity( h );
    for ( const Point u : terms.max_terms )
    {
      std::vector<int> s0, sub_map;
      for ( int i = 0; i < n; ++i )
      {
        if ( u >> i & 1 )
        {
          sub_map.push_back( coord_map[i] );
        }
        else
        {
          s0.push_back( coord_map[i] );
        }
      }
      const TruthTable sub = restrict_table( h, Restriction::under( u, n ) );
      if ( alt( sub ).value > alt_budget - 1 )
      {
        throw std::logic_error( "max-term restriction failed to reduce alt" );
      }
      const auto base = cover_rec( sub, target, sub_map, depth + 1, alt_budget - 1, levels );
      level.max_sub_rects = std::max( level.max_sub_rects, base.size() );
      std::vector<int> cell( s0.size(), 0 ); // 0 -> (0,0), 1 -> (0,1), 2 -> (1,0)
      while ( true )
      {
        for ( auto r : base )
        {
          for ( std::size_t j = 0; j < s0.size(); ++j )
          {
            r.x_fix.fix( s0[j], cell[j] == 2 );
            r.y_fix.fix( s0[j], cell[j] == 1 );
          }
          tag( r, Provenance::maxterm_cell );
          out.push_back( std::move( r ) );
        }
        std::size_t j = 0;
        while ( j < cell.size() && cell[j] == 2 )
        {
          cell[j++] = 0;
        }
        if ( j == cell.size() )
        {
          break;
        }
        ++cell[j];
      }
    }
  }
  else
  {
    throw cover_not_constructible( "subfunction agrees with the target on both 0^n and 1^n; "
                                   "the min/max-term recursion cannot proceed" );
  }
  level.rects_total = out.size();
  levels.push_back( level );
  return out;
}

} // namespace detail

/*! \brief Recursive 1-cover of the AND-composed matrix from the min/max-term
  construction.

  Requires f(0^n) = 0 (negate the output first otherwise).  Throws
  cover_not_constructible when the recursion reaches a subfunction whose value
  at both lattice ends equals the covering target; such functions need the
  communication-complexity bound that is out of reach of this construction.
  The returned cover is re-verified: every 1-entry covered, every rectangle
  monochromatic.
*/
inline Cover minterm_cover( const TruthTable& t, int cap = comm_arity_cap )
{
  detail::require_cap( t, cap, "minterm_cover" );
  if ( t.get( 0 ) )
  {
    throw std::invalid_argument( "minterm_cover requires f(0^n) = 0" );
  }
  const int n = t.arity();
  std::vector<int> identity( n );
  for ( int i = 0; i < n; ++i )
  {
    identity[i] = i;
  }
  Cover cover;
  const int alt_top = alt( t ).value;
  auto rel = detail::cover_rec( t, true, identity, 0, std::max( alt_top, 1 ), cover.levels );
  const std::uint64_t dim = t.size();
  for ( const auto& r : rel )
  {
    Rectangle rect;
    rect.prov = r.prov;
    for ( Point x = 0; x < Point( dim ); ++x )
    {
      if ( detail::matches( x, r.x_fix ) )
      {
        rect.rows |= std::uint64_t( 1 ) << x;
      }
      if ( detail::matches( x, r.y_fix ) )
      {
        rect.cols |= std::uint64_t( 1 ) << x;
      }
    }
    cover.rects.push_back( rect );
  }
  // re-verify: monochromatic rectangles covering all 1-entries
  for ( Point x = 0; x < Point( dim ); ++x )
  {
    for ( Point y = 0; y < Point( dim ); ++y )
    {
      const bool one = t.get( x & y );
      bool covered = false;
      for ( const auto& r : cover.rects )
      {
        if ( ( r.rows >> x & 1 ) && ( r.cols >> y & 1 ) )
        {
          covered = true;
          if ( !one )
          {
            throw std::logic_error( "cover rectangle contains a 0-entry" );
          }
        }
      }
      if ( one && !covered )
      {
        throw std::logic_error( "uncovered 1-entry" );
      }
    }
  }
  return cover;
}

/*! One max term's 3^k cell decomposition; cells fix (x_i, y_i) on the zero
  set of the max term to one of (0,0), (0,1), (1,0). */
struct MaxtermEntry
{
  Point max_term = 0;
  TruthTable sub;
  std::vector<std::pair<Restriction, Restriction>> cells;
};

/*! \brief Cell decomposition of all 1-entries from max terms.

  Requires f(0^n) = 0 and even alternating number (so f(1^n) = 0 and every
  1-input lies under a max term).  Verifies the coverage and that every
  subfunction drops the alternating number.
*/
inline std::vector<MaxtermEntry> maxterm_decomposition( const TruthTable& t, int cap = comm_arity_cap )
{
  detail::require_cap( t, cap, "maxterm_decomposition" );
  const int alt_value = alt( t ).value;
  if ( t.get( 0 ) || alt_value % 2 != 0 )
  {
    throw std::invalid_argument( "maxterm_decomposition requires f(0^n) = 0 and even alt" );
  }
  const int n = t.arity();
  std::vector<MaxtermEntry> entries;
  for ( const Point u : find_terms( t ).max_terms )
  {
    MaxtermEntry e;
    e.max_term = u;
    e.sub = restrict_table( t, Restriction::under( u, n ) );
    if ( alt( e.sub ).value > alt_value - 1 )
    {
      throw std::logic_error( "max-term subfunction failed to reduce alt" );
    }
    std::vector<int> s0;
    for ( int i = 0; i < n; ++i )
    {
      if ( !( u >> i & 1 ) )
      {
        s0.push_back( i );
      }
    }
    std::vector<int> cell( s0.size(), 0 );
    while ( true )
    {
      Restriction xf, yf;
      for ( std::size_t j = 0; j < s0.size(); ++j )
      {
        xf.fix( s0[j], cell[j] == 2 );
        yf.fix( s0[j], cell[j] == 1 );
      }
      e.cells.emplace_back( xf, yf );
      std::size_t j = 0;
      while ( j < cell.size() && cell[j] == 2 )
      {
        cell[j++] = 0;
      }
      if ( j == cell.size() )
      {
        break;
      }
      ++cell[j];
    }
    entries.push_back( std::move( e ) );
  }
  // coverage: every 1-entry obeys some cell of some max term
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    for ( Point y = 0; y < Point( t.size() ); ++y )
    {
      if ( !t.get( x & y ) )
      {
        continue;
      }
      bool covered = false;
      for ( const auto& e : entries )
      {
        for ( const auto& [xf, yf] : e.cells )
        {
          if ( detail::matches( x, xf ) && detail::matches( y, yf ) )
          {
            covered = true;
            break;
          }
        }
        if ( covered )
        {
          break;
        }
      }
      if ( !covered )
      {
        throw std::logic_error( "1-entry escapes the max-term cells" );
      }
    }
  }
  return entries;
}

/*! \brief Exact minimum monochromatic-b rectangle cover of the b-entries.

  Enumerates all maximal monochromatic rectangles (closures of row subsets),
  then runs exact branch-and-bound set cover.
*/
inline std::uint64_t exact_cover_number( const CommMatrix& m, bool b, int dim_cap = cover_dimension_cap )
{
  const std::size_t dim = m.dim();
  if ( dim > std::size_t( dim_cap ) )
  {
    throw cap_exceeded( "exact_cover_number: dimension " + std::to_string( dim ) + " above cap " + std::to_string( dim_cap ) );
  }
  std::vector<std::uint64_t> row_mask( dim );
  std::uint64_t nonempty = 0;
  const std::uint64_t full_cols = dim == 64 ? ~std::uint64_t( 0 ) : ( std::uint64_t( 1 ) << dim ) - 1;
  for ( std::size_t x = 0; x < dim; ++x )
  {
    row_mask[x] = b ? m.rows[x] : ~m.rows[x] & full_cols;
    if ( row_mask[x] )
    {
      nonempty |= std::uint64_t( 1 ) << x;
    }
  }
  if ( !nonempty )
  {
    return 0;
  }

  // maximal rectangles: close every row subset
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rects; // (rows, cols)
  {
    std::unordered_set<std::uint64_t> seen_cols;
    for ( std::uint64_t rsub = 1; rsub < ( std::uint64_t( 1 ) << dim ); ++rsub )
    {
      if ( rsub & ~nonempty )
      {
        continue;
      }
      std::uint64_t cols = full_cols;
      for ( std::size_t x = 0; x < dim && cols; ++x )
      {
        if ( rsub >> x & 1 )
        {
          cols &= row_mask[x];
        }
      }
      if ( !cols || !seen_cols.insert( cols ).second )
      {
        continue;
      }
      std::uint64_t rows = 0;
      for ( std::size_t x = 0; x < dim; ++x )
      {
        if ( ( row_mask[x] & cols ) == cols )
        {
          rows |= std::uint64_t( 1 ) << x;
        }
      }
      rects.emplace_back( rows, cols );
    }
  }

  // universe of b-entries, as flat indices x * dim + y, in up-to-256-bit masks
  constexpr std::size_t words = 4;
  using EntrySet = std::array<std::uint64_t, words>;
  const auto empty_set = EntrySet{};
  auto set_bit = []( EntrySet& s, std::size_t i ) { s[i >> 6] |= std::uint64_t( 1 ) << ( i & 63 ); };
  auto count = []( const EntrySet& s ) {
    std::size_t c = 0;
    for ( auto w : s )
    {
      c += std::popcount( w );
    }
    return c;
  };
  EntrySet universe = empty_set;
  for ( std::size_t x = 0; x < dim; ++x )
  {
    for ( std::size_t y = 0; y < dim; ++y )
    {
      if ( row_mask[x] >> y & 1 )
      {
        set_bit( universe, x * dim + y );
      }
    }
  }
  std::vector<EntrySet> sets( rects.size(), empty_set );
  for ( std::size_t k = 0; k < rects.size(); ++k )
  {
    for ( std::size_t x = 0; x < dim; ++x )
    {
      if ( rects[k].first >> x & 1 )
      {
        for ( std::size_t y = 0; y < dim; ++y )
        {
          if ( rects[k].second >> y & 1 )
          {
            set_bit( sets[k], x * dim + y );
          }
        }
      }
    }
  }

  auto intersect_count = [&]( const EntrySet& a, const EntrySet& bset ) {
    std::size_t c = 0;
    for ( std::size_t w = 0; w < words; ++w )
    {
      c += std::popcount( a[w] & bset[w] );
    }
    return c;
  };
  auto subtract = []( EntrySet& a, const EntrySet& bset ) {
    for ( std::size_t w = 0; w < words; ++w )
    {
      a[w] &= ~bset[w];
    }
  };
  auto test = []( const EntrySet& a, std::size_t e ) { return a[e >> 6] >> ( e & 63 ) & 1; };

  const std::size_t total_entries = dim * dim;
  std::vector<std::vector<std::uint32_t>> covering( total_entries );
  std::vector<EntrySet> cocover( total_entries, empty_set ); // entries sharing a set with e
  for ( std::uint32_t k = 0; k < sets.size(); ++k )
  {
    for ( std::size_t e = 0; e < total_entries; ++e )
    {
      if ( test( sets[k], e ) )
      {
        covering[e].push_back( k );
        for ( std::size_t w = 0; w < words; ++w )
        {
          cocover[e][w] |= sets[k][w];
        }
      }
    }
  }
  std::vector<std::size_t> entry_order; // uncovered-entry scan order: fewest candidates first
  for ( std::size_t e = 0; e < total_entries; ++e )
  {
    if ( test( universe, e ) )
    {
      entry_order.push_back( e );
    }
  }
  std::sort( entry_order.begin(), entry_order.end(),
             [&]( std::size_t a, std::size_t b ) { return covering[a].size() < covering[b].size(); } );

  // entries with a single candidate force that rectangle into every cover
  EntrySet left0 = universe;
  std::uint64_t forced = 0;
  {
    std::vector<char> taken( sets.size(), 0 );
    for ( std::size_t e : entry_order )
    {
      if ( covering[e].size() == 1 && test( left0, e ) && !taken[covering[e][0]] )
      {
        taken[covering[e][0]] = 1;
        subtract( left0, sets[covering[e][0]] );
        ++forced;
      }
    }
  }

  // fooling-set lower bound: pairwise non-co-coverable uncovered entries each
  // need their own rectangle
  auto fooling_bound = [&]( const EntrySet& left ) {
    EntrySet picked = empty_set;
    std::uint64_t n = 0;
    for ( std::size_t e : entry_order )
    {
      if ( test( left, e ) && intersect_count( cocover[e], picked ) == 0 )
      {
        picked[e >> 6] |= std::uint64_t( 1 ) << ( e & 63 );
        ++n;
      }
    }
    return n;
  };

  // greedy dual bound: maximal fractional packing of entry weights against
  // unit set capacities, in 1/64 units; ceil(total) rectangles are needed
  std::vector<std::int32_t> dual_cap( sets.size() );
  auto dual_bound = [&]( const EntrySet& left ) {
    std::fill( dual_cap.begin(), dual_cap.end(), 64 );
    std::int64_t total = 0;
    for ( std::size_t e : entry_order )
    {
      if ( !test( left, e ) )
      {
        continue;
      }
      std::int32_t w = 64;
      for ( std::uint32_t k : covering[e] )
      {
        w = std::min( w, dual_cap[k] );
      }
      if ( w > 0 )
      {
        total += w;
        for ( std::uint32_t k : covering[e] )
        {
          dual_cap[k] -= w;
        }
      }
    }
    return std::uint64_t( ( total + 63 ) / 64 );
  };
  // exact maximum fooling set of the root instance: a set of entries no two of
  // which share a rectangle, found by branch and bound with a greedy
  // clique-cover bound.  Every rectangle covers at most one of its entries, so
  // its surviving part lower-bounds every subproblem.
  EntrySet root_fooling = empty_set;
  {
#ifdef BOOLFUN_COVER_TRACE
    std::fprintf( stderr, "[cover] sets=%zu entries=%zu\n", sets.size(), count( universe ) );
#endif
    std::uint64_t best_mis = 0;
    auto clique_cover_bound = [&]( EntrySet pool ) {
      std::uint64_t cliques = 0;
      while ( count( pool ) )
      {
        std::size_t u = total_entries;
        for ( std::size_t w = 0; w < words && u == total_entries; ++w )
        {
          if ( pool[w] )
          {
            u = ( w << 6 ) + std::size_t( std::countr_zero( pool[w] ) );
          }
        }
        EntrySet common = cocover[u];
        common[u >> 6] &= ~( std::uint64_t( 1 ) << ( u & 63 ) );
        EntrySet clique = empty_set;
        clique[u >> 6] |= std::uint64_t( 1 ) << ( u & 63 );
        for ( std::size_t w = 0; w < words; ++w )
        {
          common[w] &= pool[w];
        }
        while ( true )
        {
          std::size_t v = total_entries;
          for ( std::size_t w = 0; w < words && v == total_entries; ++w )
          {
            if ( common[w] )
            {
              v = ( w << 6 ) + std::size_t( std::countr_zero( common[w] ) );
            }
          }
          if ( v == total_entries )
          {
            break;
          }
          clique[v >> 6] |= std::uint64_t( 1 ) << ( v & 63 );
          for ( std::size_t w = 0; w < words; ++w )
          {
            common[w] &= cocover[v][w];
          }
          common[v >> 6] &= ~( std::uint64_t( 1 ) << ( v & 63 ) );
        }
        for ( std::size_t w = 0; w < words; ++w )
        {
          pool[w] &= ~clique[w];
        }
        ++cliques;
      }
      return cliques;
    };
    auto mis_rec = [&]( const auto& self, EntrySet pool, EntrySet chosen, std::uint64_t size ) -> void {
      if ( size > best_mis )
      {
        best_mis = size;
        root_fooling = chosen;
      }
      if ( count( pool ) == 0 || size + clique_cover_bound( pool ) <= best_mis )
      {
        return;
      }
      std::size_t v = total_entries;
      for ( std::size_t w = 0; w < words && v == total_entries; ++w )
      {
        if ( pool[w] )
        {
          v = ( w << 6 ) + std::size_t( std::countr_zero( pool[w] ) );
        }
      }
      EntrySet in = pool;
      for ( std::size_t w = 0; w < words; ++w )
      {
        in[w] &= ~cocover[v][w];
      }
      EntrySet with = chosen;
      with[v >> 6] |= std::uint64_t( 1 ) << ( v & 63 );
      self( self, in, with, size + 1 );
      EntrySet out = pool;
      out[v >> 6] &= ~( std::uint64_t( 1 ) << ( v & 63 ) );
      self( self, out, chosen, size );
    };
    mis_rec( mis_rec, left0, empty_set, 0 );
#ifdef BOOLFUN_COVER_TRACE
    std::fprintf( stderr, "[cover] exact fooling = %llu\n", (unsigned long long)best_mis );
#endif
  }

  auto lower_bound = [&]( const EntrySet& left ) {
    std::uint64_t lb = intersect_count( root_fooling, left );
    lb = std::max( lb, fooling_bound( left ) );
    return std::max( lb, dual_bound( left ) );
  };

  // primal bound: randomized greedy restarts (ties broken by a fixed-seed
  // PRNG) with redundant-rectangle elimination, stopped once the lower bound
  // is met
  const std::uint64_t root_lb = forced + ( count( left0 ) ? lower_bound( left0 ) : 0 );
  std::uint64_t best = forced;
  if ( count( left0 ) )
  {
    best = ~std::uint64_t( 0 );
    std::uint64_t rng_state = 0x9E3779B97F4A7C15ull;
    const auto rng = [&rng_state] {
      std::uint64_t z = ( rng_state += 0x9E3779B97F4A7C15ull );
      z = ( z ^ ( z >> 30 ) ) * 0xBF58476D1CE4E5B9ull;
      z = ( z ^ ( z >> 27 ) ) * 0x94D049BB133111EBull;
      return z ^ ( z >> 31 );
    };
    std::vector<std::size_t> chosen, ties;
    for ( int restart = 0; restart < 192 && best > root_lb; ++restart )
    {
      EntrySet left = left0;
      chosen.clear();
      while ( count( left ) )
      {
        std::size_t gain = 0;
        ties.clear();
        for ( std::size_t k = 0; k < sets.size(); ++k )
        {
          const auto g = intersect_count( left, sets[k] );
          if ( g > gain )
          {
            gain = g;
            ties.clear();
          }
          if ( g == gain && g > 0 )
          {
            ties.push_back( k );
          }
        }
        const std::size_t pick = restart == 0 ? ties.front() : ties[rng() % ties.size()];
        subtract( left, sets[pick] );
        chosen.push_back( pick );
      }
      // drop rectangles made redundant by later picks
      for ( std::size_t i = 0; i < chosen.size(); )
      {
        EntrySet rest = left0;
        for ( std::size_t j = 0; j < chosen.size(); ++j )
        {
          if ( j != i )
          {
            subtract( rest, sets[chosen[j]] );
          }
        }
        if ( count( rest ) == 0 )
        {
          chosen.erase( chosen.begin() + i );
        }
        else
        {
          ++i;
        }
      }
      best = std::min( best, forced + chosen.size() );
    }
  }

  // memo: canonical uncovered state -> exact remaining cover size, or a lower
  // bound proven by an exhausted budget; states are canonicalized under matrix
  // automorphisms (transpose, and the diagonal translations of group-structured
  // matrices), which map rectangles to rectangles and preserve the cover number
  struct StateHash
  {
    std::size_t operator()( const EntrySet& s ) const
    {
      std::uint64_t h = 0x9E3779B97F4A7C15ull;
      for ( auto w : s )
      {
        h ^= w + 0x9E3779B97F4A7C15ull + ( h << 6 ) + ( h >> 2 );
      }
      return std::size_t( h );
    }
  };
  struct MemoEntry
  {
    std::uint64_t value = 0;
    bool exact = false;
  };
  std::unordered_map<EntrySet, MemoEntry, StateHash> memo;
  std::size_t max_set_size = 1;
  for ( const auto& s : sets )
  {
    max_set_size = std::max( max_set_size, intersect_count( s, s ) );
  }

  std::vector<std::vector<std::uint16_t>> autos;
  {
    bool symmetric = true, xor_like = true;
    for ( std::size_t x = 0; x < dim; ++x )
    {
      for ( std::size_t y = 0; y < dim; ++y )
      {
        symmetric = symmetric && ( m.rows[x] >> y & 1 ) == ( m.rows[y] >> x & 1 );
        xor_like = xor_like && ( m.rows[x] >> y & 1 ) == ( m.rows[0] >> ( x ^ y ) & 1 );
      }
    }
    for ( std::size_t a = 0; a < dim; ++a )
    {
      if ( a != 0 && !xor_like )
      {
        break;
      }
      for ( int transpose = 0; transpose < ( symmetric ? 2 : 1 ); ++transpose )
      {
        if ( a == 0 && transpose == 0 )
        {
          continue; // identity
        }
        std::vector<std::uint16_t> p( total_entries );
        for ( std::size_t x = 0; x < dim; ++x )
        {
          for ( std::size_t y = 0; y < dim; ++y )
          {
            const std::size_t tx = transpose ? y : x, ty = transpose ? x : y;
            p[x * dim + y] = std::uint16_t( ( tx ^ a ) * dim + ( ty ^ a ) );
          }
        }
        autos.push_back( std::move( p ) );
      }
    }
  }
  auto canonical = [&]( const EntrySet& s ) {
    EntrySet best_key = s;
    for ( const auto& p : autos )
    {
      EntrySet mapped = empty_set;
      for ( std::size_t w = 0; w < words; ++w )
      {
        std::uint64_t bits = s[w];
        while ( bits )
        {
          const std::size_t e = ( w << 6 ) + std::size_t( std::countr_zero( bits ) );
          bits &= bits - 1;
          const std::size_t f = p[e];
          mapped[f >> 6] |= std::uint64_t( 1 ) << ( f & 63 );
        }
      }
      if ( mapped < best_key )
      {
        best_key = mapped;
      }
    }
    return best_key;
  };

  // exact remaining cover size capped at budget: a return value < budget is
  // exact, a return of budget proves the true value is >= budget.  Branches on
  // the scarcest uncovered entry with dominance-filtered candidates.
  auto solve = [&]( const auto& self, const EntrySet& left, std::uint64_t budget ) -> std::uint64_t {
    const std::size_t remaining = count( left );
    if ( remaining == 0 )
    {
      return 0;
    }
    const auto volume_bound = ( remaining + max_set_size - 1 ) / max_set_size;
    std::uint64_t lb = std::max<std::uint64_t>( volume_bound, 1 );
    if ( lb < budget )
    {
      lb = std::max( lb, lower_bound( left ) );
    }
    if ( lb >= budget )
    {
      return budget;
    }
    const EntrySet key = canonical( left );
    auto memo_it = memo.find( key );
    if ( memo_it != memo.end() )
    {
      if ( memo_it->second.exact )
      {
        return std::min( memo_it->second.value, budget );
      }
      if ( memo_it->second.value >= budget )
      {
        return budget;
      }
      lb = std::max( lb, memo_it->second.value );
    }

    std::size_t pick_entry = total_entries;
    for ( std::size_t e : entry_order )
    {
      if ( test( left, e ) )
      {
        pick_entry = e;
        break;
      }
    }
    std::vector<std::pair<EntrySet, std::size_t>> candidates; // (gain set, gain)
    for ( std::uint32_t k : covering[pick_entry] )
    {
      EntrySet gain = sets[k];
      for ( std::size_t w = 0; w < words; ++w )
      {
        gain[w] &= left[w];
      }
      candidates.emplace_back( gain, intersect_count( gain, gain ) );
    }
    std::sort( candidates.begin(), candidates.end(), []( const auto& a, const auto& b ) { return a.second > b.second; } );
    std::vector<const EntrySet*> kept; // drop gains contained in an earlier one
    for ( const auto& [gain, sz] : candidates )
    {
      bool dominated = false;
      for ( const EntrySet* g : kept )
      {
        bool subset = true;
        for ( std::size_t w = 0; w < words && subset; ++w )
        {
          subset = ( gain[w] & ~( *g )[w] ) == 0;
        }
        if ( subset )
        {
          dominated = true;
          break;
        }
      }
      if ( !dominated )
      {
        kept.push_back( &gain );
      }
    }
    std::uint64_t value = budget;
    for ( const EntrySet* g : kept )
    {
      EntrySet next = left;
      subtract( next, *g );
      value = std::min( value, 1 + self( self, next, value - 1 ) );
      if ( value <= lb )
      {
        break;
      }
    }
    MemoEntry entry;
    entry.exact = value < budget;
    entry.value = value;
    // re-find: recursive inserts may have rehashed the table
    if ( auto it = memo.find( key ); it != memo.end() )
    {
      if ( !it->second.exact && ( entry.exact || entry.value > it->second.value ) )
      {
        it->second = entry;
      }
    }
    else if ( memo.size() < ( std::size_t( 1 ) << 22 ) )
    {
      memo.emplace( key, entry );
    }
    return value;
  };
#ifdef BOOLFUN_COVER_TRACE
  std::fprintf( stderr, "[cover] greedy UB = %llu, root LB = %llu\n", (unsigned long long)best,
                (unsigned long long)( forced + lower_bound( left0 ) ) );
#endif
  const std::uint64_t improved = solve( solve, left0, best - forced );
  return std::min( best, forced + improved );
}

struct ProtocolMsg
{
  char speaker = 'A'; // 'A' sends x_i, 'B' answers with y_i
  bool bit = false;
};

struct Transcript
{
  std::vector<ProtocolMsg> msgs;

  std::size_t cost() const { return msgs.size(); }
};

/*! \brief Runs the two-party simulation of a decision tree on (x, y).

  Every query of coordinate i costs one bit from each party; the parties
  combine the bits with AND or XOR locally and walk the tree in lockstep.
*/
inline std::pair<bool, Transcript> simulate_tree_protocol( const DecisionTree& tree, Composition comp, Point x, Point y )
{
  Transcript tr;
  int at = tree.root;
  while ( tree.nodes[at].coord >= 0 )
  {
    const int i = tree.nodes[at].coord;
    const bool xi = x >> i & 1;
    const bool yi = y >> i & 1;
    tr.msgs.push_back( { 'A', xi } );
    tr.msgs.push_back( { 'B', yi } );
    const bool z = comp == Composition::and_comp ? ( xi && yi ) : ( xi != yi );
    at = z ? tree.nodes[at].child1 : tree.nodes[at].child0;
  }
  return { tree.nodes[at].value, tr };
}

/*! Numeric side-by-side of the cover/rank bound, the tree-derived protocol
  cost, and the alternating-number bounds.  Purely a report. */
struct CompositionBounds
{
  std::uint64_t rank = 0;
  std::uint64_t cover1 = 0;
  double log_rank = 0.0;
  double log_cover1 = 0.0;
  double lovasz_bound = 0.0; // log2(cover1) * log2(rank)
  bool trivial = false;      // rank or cover1 is 0/1
};

struct LovaszReport
{
  int n = 0;
  std::string table;
  CompositionBounds and_side, xor_side;
  int dt = 0;
  int alt = 0;
  int protocol_cost = 0;   // 2 * dt
  double alt_xor_bound = 0.0; // 2 * alt * log2(xor rank)^2
  bool minterm_cover_applicable = false;
  bool minterm_cover_negated = false; // built on the complement when f(0^n) = 1
  std::size_t minterm_cover_size = 0;
};

inline constexpr int lovasz_arity_cap = 4;

inline LovaszReport lovasz_bound_report( const TruthTable& t, int cap = lovasz_arity_cap )
{
  detail::require_cap( t, cap, "lovasz_bound_report" );
  LovaszReport rep;
  rep.n = t.arity();
  rep.table = t.format();
  const auto side = [&]( Composition comp ) {
    CompositionBounds b;
    const auto m = build_comm_matrix( t, comp );
    b.rank = exact_rank( m );
    b.cover1 = exact_cover_number( m, true );
    b.trivial = b.rank <= 1 || b.cover1 <= 1;
    b.log_rank = b.rank ? std::log2( double( b.rank ) ) : 0.0;
    b.log_cover1 = b.cover1 ? std::log2( double( b.cover1 ) ) : 0.0;
    b.lovasz_bound = b.log_rank * b.log_cover1;
    return b;
  };
  rep.and_side = side( Composition::and_comp );
  rep.xor_side = side( Composition::xor_comp );
  rep.dt = dt_depth( t );
  rep.alt = alt( t ).value;
  rep.protocol_cost = 2 * rep.dt;
  rep.alt_xor_bound = 2.0 * rep.alt * rep.xor_side.log_rank * rep.xor_side.log_rank;
  const TruthTable base = t.get( 0 ) ? negate_output( t ) : t;
  rep.minterm_cover_negated = t.get( 0 );
  try
  {
    rep.minterm_cover_size = minterm_cover( base ).rects.size();
    rep.minterm_cover_applicable = true;
  }
  catch ( const cover_not_constructible& )
  {
    rep.minterm_cover_applicable = false;
  }
  return rep;
}

} // namespace boolfun
