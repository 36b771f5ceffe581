#!/usr/bin/env python3
"""Writes data/seeds/seeds.json from the compact dialogue listing below.

Lines are `goal: <goal>`, `U: <belief> || <utterance>` and
`A: <act> || <response>`; dialogues start with `# <id>`.
"""
import json
import pathlib
import re

SEEDS = r"""
# SNG01856
goal: [hotel] type is hotel , pricerange is cheap , parking is yes , stay is 2 , day is tuesday , people is 6
U: [hotel] type is hotel , pricerange is cheap || i am looking for a place to to stay that has cheap price range it should be in a type of hotel .
A: [hotel] [request] area || okay , do you have a specific area you want to stay in ?
U: [hotel] parking is yes , pricerange is cheap || no , i just need to make sure it is cheap . oh , and i need parking .
A: [hotel] [inform] price choice parking type [offerbook] || i found [value_choice] [value_price] [value_type] for you that include -s parking . do you like me to book it ?
U: [hotel] stay is 3 , day is tuesday , people is 6 || yes , please . 6 people 3 nights starting on tuesday .
A: [hotel] [nobook] day [request] stay day || i am sorry but i was n't able to book that for you for [value_day] . is there another day you would like to stay or perhaps a shorter stay ?
U: [hotel] stay is 2 || how about only 2 nights .
A: [hotel] [offerbooked] reference [general] [reqmore] || booking was successful . reference number is : [value_reference] . anything else i can do for you ?
U: [general] || no , that will be all . goodbye .
A: [general] [bye] || thank you for using our services .

# PMUL1576
goal: [train] destination is leicester , departure is cambridge , leave is 08:45 , day is saturday , arrive is dontcare [hotel] name is cityroomz , stay is 4 , day is tuesday , people is 8
U: [train] destination is leicester , departure is cambridge , leave is 08:45 || i really need to get out of cambridge ! can you find me a train to leicester ? sometime after 08:45 because i like to sleep in .
A: [train] [request] day || i would be happy to help with your request , what day will you be leaving ?
U: [train] day is saturday || i 'll be leaving this place on saturday .
A: [train] [request] arrive || what time would you like to arrive by ?
U: [train] arrive is dontcare || it does not matter .
A: [train] [inform] destination arrive leave [offerbook] || there is a train that leaves at [value_leave] and arrive in leiester at [value_arrive] . would you like me to book it for you ?
U: [train] || no thank you . what is the cost of the ticket ?
A: [train] [inform] price [general] [reqmore] || the ticket price is [value_price] . can i be of further assistance ?
U: [train] || i also need the travel time and arrival time please .
A: [train] [inform] arrive time || arrival time is [value_arrive] and travel time is [value_time] .
U: [hotel] name is cityroomz || i ' m also looking for a particular hotel . its name is called cityroomz .
A:  || sure , what kind of information do you need ?
U: [hotel] stay is 4 , day is tuesday , people is 8 || i would like to to book it for 8 people and 4 nights starting from tuesday
A: [hotel] [offerbooked] day people reference stay [general] [reqmore] || i have booked a room for [value_people] for [value_stay] nights beginning on [value_day] . your reference number is [value_reference] . is there anything else i can help you with today ?
U: [general] || not at this time . thank you .
A: [general] [bye] || have a fantastic day , goodbye .

# SNG0955
goal: [hotel] pricerange is expensive , area is east , parking is yes
U: [hotel] pricerange is expensive || i need a place to stay that does n't have to have internet and is in the expensive price range please .
A: [hotel] [inform] choice [request] area || i have [value_choice] different ones all around town . did you prefer to stay in a certain area ?
U: [hotel] area is east || yes , on the east side please .
A: [hotel] [inform] name [offerbook] || [value_name] meets your needs , would you like to book it ?
U: [hotel] parking is yes || does it have free parking ?
A: [hotel] [inform] parking || yes , it does .
U: [hotel] || i ' m not ready to book . can you just tell me what the address is ? oh , and how many stars is it ?
A: [hotel] [inform] type stars address [general] [reqmore] || sure . it is a [value_stars] star [value_type] and the address is [value_address] . anything else ?
U: [general] || no , that is all . thanks .
A: [general] [bye] || you are welcome ! please contact us if you would like to make a reservation in the future .

# SNG1006
goal: [hotel] area is centre , type is hotel , name is gonville hotel , stay is 4 , day is saturday , people is 6
U: [hotel] area is centre || i need a place to stay in the centre of town .
A: [hotel] [inform] choice [request] type || there are [value_choice] places in the centre . would you prefer a guesthouse or a hotel ?
U: [hotel] type is hotel , name is gonville hotel , stay is 4 , day is saturday , people is 6 || okay , i would like to book a room at the gonville hotel for 4 nights . there will be 6 people and we will be arriving on saturday .
A: [hotel] [offerbooked] reference [general] [reqmore] || your room is booked . the reference number is [value_reference] . can i help with anything else ?
U: [general] || no , thank you . that is everything .
A: [general] [bye] || enjoy your stay . goodbye .

# SEED-R01
goal: [restaurant] food is italian , pricerange is cheap , area is centre , people is 2 , day is friday , time is 19:30
U: [restaurant] food is italian , pricerange is cheap || i am looking for a cheap italian restaurant .
A: [restaurant] [inform] choice [request] area || there are [value_choice] of those . which part of town would you like ?
U: [restaurant] area is centre || the centre please .
A: [restaurant] [recommend] name [offerbook] || i recommend [value_name] . shall i book a table ?
U: [restaurant] people is 2 , day is friday , time is 19:30 || yes , a table for 2 on friday at 19:30 please .
A: [restaurant] [offerbooked] reference [general] [reqmore] || done . your reference number is [value_reference] . anything else ?
U: [general] || that is all , thank you .
A: [general] [bye] || enjoy your meal !

# SEED-A01
goal: [attraction] type is museum , area is west
U: [attraction] type is museum || can you tell me about museums in town ?
A: [attraction] [inform] choice [request] area || there are [value_choice] museums . is there an area you prefer ?
U: [attraction] area is west || something in the west would be great .
A: [attraction] [recommend] name address [general] [reqmore] || [value_name] is at [value_address] . can i help with anything else ?
U: [attraction] || what is their phone number ?
A: [attraction] [inform] phone || the phone number is [value_phone] .
U: [general] || great , thanks . bye .
A: [general] [bye] || have a nice day .

# SEED-AT01
goal: [attraction] type is college , area is centre [taxi] departure is christ's college , destination is the golden curry , leave is 17:15
U: [attraction] type is college , area is centre || i want to visit a college in the centre .
A: [attraction] [inform] choice name [general] [reqmore] || there are [value_choice] colleges there , such as [value_name] . anything else ?
U: [attraction] name is christ's college || christ's college sounds good . what is the entrance fee ?
A: [attraction] [inform] address phone || it is free . they are at [value_address] and the phone is [value_phone] .
U: [taxi] departure is christ's college , destination is the golden curry , leave is 17:15 || i also need a taxi from christ's college to the golden curry leaving after 17:15 .
A: [taxi] [inform] car phone [general] [reqmore] || i booked a [value_car] , contact number [value_phone] . anything else ?
U: [general] || no , that is it . thanks .
A: [general] [bye] || goodbye .

# SEED-RH01
goal: [restaurant] food is indian , area is north , pricerange is moderate [hotel] area is north , type is guesthouse , internet is yes , stay is 3 , day is monday , people is 3
U: [restaurant] food is indian , area is north || i am looking for an indian place in the north .
A: [restaurant] [inform] choice [request] pricerange || i have [value_choice] options . what price range do you want ?
U: [restaurant] pricerange is moderate || moderately priced please .
A: [restaurant] [inform] name address [general] [reqmore] || [value_name] is at [value_address] . anything else ?
U: [hotel] area is north , type is guesthouse , internet is yes || i also need a guesthouse in the north with free wifi .
A: [hotel] [inform] choice name [offerbook] || there are [value_choice] , [value_name] is nice . would you like a room ?
U: [hotel] stay is 3 , day is monday , people is 3 || yes , book it for 3 people for 3 nights from monday .
A: [hotel] [offerbooked] reference [general] [reqmore] || booked , reference [value_reference] . anything else ?
U: [general] || no , thanks . goodbye .
A: [general] [bye] || goodbye and enjoy your trip .

# SEED-TR01
goal: [train] departure is london kings cross , destination is cambridge , day is wednesday , arrive is 10:00 , people is 2 [restaurant] area is centre , food is chinese , pricerange is expensive
U: [train] departure is london kings cross , destination is cambridge || i need a train from london kings cross to cambridge .
A: [train] [inform] choice [request] day || there are [value_choice] trains . what day ?
U: [train] day is wednesday , arrive is 10:00 || wednesday , and i need to arrive by 10:00 .
A: [train] [inform] id leave [offerbook] || [value_id] leaves at [value_leave] . should i book it ?
U: [train] people is 2 || yes , for 2 people please .
A: [train] [offerbooked] reference price [general] [reqmore] || booked . the total fee is [value_price] , reference [value_reference] . anything else ?
U: [restaurant] area is centre , food is chinese , pricerange is expensive || i also want an expensive chinese restaurant in the centre .
A: [restaurant] [inform] choice name [general] [reqmore] || there are [value_choice] , such as [value_name] . anything else ?
U: [general] || no , that is all .
A: [general] [bye] || have a good trip .

# SEED-HO01
goal: [hospital] department is cardiology
U: [hospital] department is cardiology || i need to find the hospital with a cardiology department .
A: [hospital] [inform] address phone [general] [reqmore] || the hospital is at [value_address] and the phone is [value_phone] . anything else ?
U: [general] || no , that is all i need .
A: [general] [bye] || i hope you feel better .

# SEED-PO01
goal: [police]
U: [police] || i was robbed and need the police station .
A: [police] [inform] address phone || the police station is at [value_address] , phone [value_phone] .
U: [general] || thanks , goodbye .
A: [general] [bye] || take care .

# SEED-HA01
goal: [hotel] pricerange is moderate , stars is 4 , area is north , stay is 2 , day is sunday , people is 2 [attraction] area is north
U: [hotel] pricerange is moderate , stars is 4 || hello , i need a moderately priced 4 star place to stay .
A: [hotel] [inform] choice [request] area || i have [value_choice] . any preferred area ?
U: [hotel] area is north || in the north .
A: [hotel] [recommend] name [offerbook] || how about [value_name] ? shall i book it ?
U: [hotel] stay is 2 , day is sunday , people is 2 || please book it for 2 people , 2 nights from sunday .
A: [hotel] [offerbooked] reference [general] [reqmore] || you are booked , reference [value_reference] . anything else ?
U: [attraction] area is north || is there anything fun to do in the north ?
A: [attraction] [inform] choice name [general] [reqmore] || there are [value_choice] attractions , for example [value_name] . anything else ?
U: [general] || no , thank you .
A: [general] [bye] || enjoy your stay .
"""

BELIEF_RE = re.compile(r"\[([a-z]+)\]([^\[]*)")


def parse_goal(text):
    out = {}
    for m in BELIEF_RE.finditer(text):
        domain, body = m.group(1), m.group(2).strip()
        slots = out.setdefault(domain, {})
        for part in filter(None, (p.strip() for p in body.split(" , "))):
            slot, value = part.split(" is ", 1)
            slots[slot.strip()] = value.strip()
    return out


ACTS = {"inform", "request", "select", "recommend", "nooffer", "offerbook", "offerbooked", "nobook", "welcome",
        "greet", "bye", "reqmore"}


def parse_act(text):
    triples = []
    domain = act = None
    has_slot = False

    def flush():
        if domain is not None and act is not None and not has_slot:
            triples.append([domain, act, "none"])

    for tok in re.findall(r"\[[^\]]+\]|[^\s\[\]]+", text):
        if tok.startswith("["):
            flush()
            name = tok[1:-1]
            if name in ACTS:
                act = name
            else:
                domain, act = name, None
            has_slot = False
        else:
            triples.append([domain, act, tok])
            has_slot = True
    flush()
    return triples


def main():
    dialogues = []
    cur = None
    for raw in SEEDS.strip().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("# "):
            cur = {"id": line[2:], "source": "seed", "goal": {}, "turns": []}
            dialogues.append(cur)
        elif line.startswith("goal:"):
            cur["goal"] = parse_goal(line[5:])
        elif line.startswith("U:"):
            belief, utt = line[2:].split("||")
            cur["turns"].append({"user": utt.strip(), "belief": parse_goal(belief)})
        elif line.startswith("A:"):
            act, resp = line[2:].split("||")
            cur["turns"][-1]["act"] = parse_act(act.strip())
            cur["turns"][-1]["resp"] = resp.strip()
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "seeds" / "seeds.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"dialogues": dialogues}, indent=1) + "\n")
    print(f"wrote {len(dialogues)} dialogues to {out}")


if __name__ == "__main__":
    main()
