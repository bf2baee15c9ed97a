/** Static per-mode tips shown in the middle panel. */

import type { CriterionId } from './types.js';

export const MODE_TIPS: Record<CriterionId, string> = {
  DP: [
    'Downward pointing paths',
    'Directed edges count as downward when the arrow head sits below the tail at 15° or steeper. Red edges point the wrong way: drag their endpoints so whole chains flow top to bottom.',
    'Ask for a clue to get a path whose reorientation is guaranteed to add downward paths.',
  ].join('\n'),
  EC: [
    'Non-crossing edge pairs',
    'Every red dot is a crossing. Hover a dot to see the two edges involved, then pull one of their endpoints aside without creating new crossings.',
    'The clue picks the crossing whose endpoints have the fewest other edges, so it is the easiest to untangle.',
  ].join('\n'),
  EL: [
    'Edge length',
    'Short edges (under 300 px) are penalized hard; very long edges cost proportionally. Keep connected nodes comfortably close.',
    'The clue highlights the edge currently costing the most.',
  ].join('\n'),
  ND: [
    'Node distribution',
    'Unconnected nodes should stay far apart. Spread clusters out; the expand control scales a selection away from its center.',
    'The clue highlights the closest unconnected pair.',
  ].join('\n'),
  NED: [
    'Node-edge separation',
    'Nodes should not sit on or near edges they do not belong to. Nudge nodes away from foreign edges.',
    'The clue highlights the closest node-edge pair.',
  ].join('\n'),
};
