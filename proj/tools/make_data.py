#!/usr/bin/env python3
"""Regenerates data/ontology.json and data/db/*.json.

Entity tables are a compact Cambridge-style sample (not the full MultiWOZ
dump); the train timetable is synthesized hourly per route.
"""
import json
import os
import random

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

HOTELS = [
    ("a and b guest house", "guesthouse", "east", "moderate", "4", "yes", "no"),
    ("acorn guest house", "guesthouse", "north", "moderate", "4", "yes", "yes"),
    ("alexander bed and breakfast", "guesthouse", "centre", "cheap", "4", "yes", "yes"),
    ("allenbell", "guesthouse", "east", "cheap", "4", "yes", "yes"),
    ("alpha-milton guest house", "guesthouse", "north", "moderate", "3", "no", "no"),
    ("arbury lodge guesthouse", "guesthouse", "north", "moderate", "4", "yes", "yes"),
    ("archway house", "guesthouse", "north", "moderate", "4", "yes", "yes"),
    ("ashley hotel", "hotel", "north", "moderate", "2", "yes", "yes"),
    ("autumn house", "guesthouse", "east", "cheap", "4", "yes", "yes"),
    ("avalon", "guesthouse", "north", "moderate", "4", "yes", "no"),
    ("aylesbray lodge guest house", "guesthouse", "south", "moderate", "4", "yes", "yes"),
    ("bridge guest house", "guesthouse", "south", "moderate", "3", "yes", "yes"),
    ("carolina bed and breakfast", "guesthouse", "east", "moderate", "4", "yes", "yes"),
    ("city centre north b and b", "guesthouse", "north", "cheap", "0", "yes", "yes"),
    ("cityroomz", "hotel", "centre", "moderate", "0", "yes", "no"),
    ("el shaddai", "guesthouse", "centre", "cheap", "0", "yes", "yes"),
    ("express by holiday inn cambridge", "hotel", "east", "expensive", "2", "yes", "yes"),
    ("finches bed and breakfast", "guesthouse", "west", "cheap", "4", "yes", "yes"),
    ("gonville hotel", "hotel", "centre", "expensive", "3", "yes", "yes"),
    ("hamilton lodge", "guesthouse", "north", "moderate", "3", "yes", "yes"),
    ("hobsons house", "guesthouse", "west", "moderate", "3", "yes", "yes"),
    ("home from home", "guesthouse", "north", "moderate", "4", "yes", "yes"),
    ("huntingdon marriott hotel", "hotel", "west", "expensive", "4", "yes", "yes"),
    ("kirkwood house", "guesthouse", "north", "moderate", "4", "yes", "yes"),
    ("leverton house", "guesthouse", "east", "cheap", "4", "yes", "yes"),
    ("limehouse", "guesthouse", "north", "moderate", "4", "yes", "no"),
    ("lovell lodge", "hotel", "north", "moderate", "2", "yes", "yes"),
    ("rosa's bed and breakfast", "guesthouse", "south", "cheap", "4", "yes", "yes"),
    ("the cambridge belfry", "hotel", "west", "cheap", "4", "yes", "yes"),
    ("the lensfield hotel", "hotel", "south", "expensive", "3", "yes", "yes"),
    ("university arms hotel", "hotel", "centre", "expensive", "4", "yes", "yes"),
    ("warkworth house", "guesthouse", "east", "moderate", "4", "yes", "yes"),
    ("worth house", "guesthouse", "north", "cheap", "4", "yes", "yes"),
]

RESTAURANTS = [
    ("pizza hut city centre", "italian", "centre", "cheap"),
    ("la margherita", "italian", "west", "cheap"),
    ("prezzo", "italian", "west", "moderate"),
    ("frankie and bennys", "italian", "south", "expensive"),
    ("golden wok", "chinese", "north", "moderate"),
    ("charlie chan", "chinese", "centre", "cheap"),
    ("the good luck chinese food takeaway", "chinese", "south", "expensive"),
    ("yu garden", "chinese", "east", "expensive"),
    ("hk fusion", "chinese", "centre", "expensive"),
    ("the golden curry", "indian", "centre", "expensive"),
    ("kohinoor", "indian", "centre", "cheap"),
    ("royal spice", "indian", "north", "cheap"),
    ("curry prince", "indian", "east", "moderate"),
    ("tandoori palace", "indian", "west", "expensive"),
    ("meghna", "indian", "west", "moderate"),
    ("nandos", "portuguese", "south", "cheap"),
    ("nandos city centre", "portuguese", "centre", "cheap"),
    ("la tasca", "spanish", "centre", "moderate"),
    ("la raza", "spanish", "centre", "cheap"),
    ("the nirala", "indian", "north", "moderate"),
    ("restaurant one seven", "british", "centre", "moderate"),
    ("the oak bistro", "british", "centre", "moderate"),
    ("midsummer house restaurant", "british", "centre", "expensive"),
    ("graffiti", "british", "west", "expensive"),
    ("saint johns chop house", "british", "west", "moderate"),
    ("the cambridge chop house", "british", "centre", "expensive"),
    ("travellers rest", "british", "west", "expensive"),
    ("the gardenia", "mediterranean", "centre", "cheap"),
    ("shiraz restaurant", "mediterranean", "centre", "expensive"),
    ("la mimosa", "mediterranean", "centre", "expensive"),
    ("cote", "french", "centre", "expensive"),
    ("restaurant two two", "french", "north", "expensive"),
    ("darrys cookhouse and wine shop", "modern european", "centre", "expensive"),
    ("riverside brasserie", "modern european", "centre", "moderate"),
    ("de luca cucina and bar", "modern european", "centre", "moderate"),
    ("saigon city", "asian oriental", "north", "expensive"),
    ("j restaurant", "asian oriental", "centre", "cheap"),
    ("kymmoy", "asian oriental", "centre", "expensive"),
    ("pipasha restaurant", "indian", "east", "expensive"),
    ("the missing sock", "international", "east", "cheap"),
    ("the varsity restaurant", "international", "centre", "moderate"),
    ("bedouin", "african", "centre", "expensive"),
    ("meze bar restaurant", "turkish", "centre", "expensive"),
    ("anatolia", "turkish", "centre", "moderate"),
    ("the lucky star", "chinese", "south", "cheap"),
    ("rice house", "chinese", "centre", "cheap"),
    ("sala thong", "thai", "west", "expensive"),
    ("bangkok city", "thai", "centre", "expensive"),
    ("fitzbillies restaurant", "british", "centre", "expensive"),
    ("the copper kettle", "british", "centre", "moderate"),
    ("galleria", "european", "centre", "moderate"),
    ("eraina", "european", "centre", "expensive"),
    ("hotel du vin and bistro", "european", "centre", "moderate"),
    ("cambridge lodge restaurant", "european", "west", "expensive"),
    ("peking restaurant", "chinese", "south", "expensive"),
    ("taj tandoori", "indian", "south", "expensive"),
    ("chiquito restaurant bar", "mexican", "south", "expensive"),
    ("little seoul", "korean", "centre", "expensive"),
    ("yippee noodle bar", "asian oriental", "centre", "moderate"),
    ("loch fyne", "seafood", "centre", "expensive"),
    ("wagamama", "japanese", "centre", "expensive"),
    ("ugly duckling", "chinese", "centre", "expensive"),
    ("lan hong house", "chinese", "centre", "moderate"),
    ("ask", "italian", "centre", "cheap"),
    ("clowns cafe", "italian", "centre", "expensive"),
    ("caffe uno", "italian", "centre", "expensive"),
    ("stazione restaurant and coffee bar", "italian", "centre", "expensive"),
    ("efes restaurant", "turkish", "centre", "moderate"),
    ("the hotpot", "chinese", "north", "expensive"),
    ("da vinci pizzeria", "italian", "north", "cheap"),
    ("city stop restaurant", "european", "north", "expensive"),
    ("the gandhi", "indian", "centre", "cheap"),
    ("mahal of cambridge", "indian", "centre", "cheap"),
    ("panahar", "indian", "centre", "expensive"),
    ("zizzi cambridge", "italian", "centre", "cheap"),
    ("the slug and lettuce", "gastropub", "centre", "expensive"),
    ("the cow pizza kitchen and bar", "gastropub", "centre", "moderate"),
    ("backstreet bistro", "gastropub", "centre", "expensive"),
    ("royal standard", "gastropub", "east", "expensive"),
    ("sesame restaurant and bar", "chinese", "centre", "expensive"),
    ("thanh binh", "vietnamese", "west", "cheap"),
    ("curry garden", "indian", "centre", "expensive"),
    ("saffron brasserie", "indian", "centre", "expensive"),
    ("india house", "indian", "west", "expensive"),
    ("rajmahal", "indian", "east", "moderate"),
    ("golden house", "chinese", "centre", "cheap"),
    ("dojo noodle bar", "asian oriental", "centre", "cheap"),
    ("tang chinese", "chinese", "centre", "expensive"),
    ("restaurant alimentum", "modern european", "south", "moderate"),
    ("pizza hut cherry hinton", "italian", "south", "moderate"),
    ("pizza hut fen ditton", "italian", "east", "moderate"),
]

ATTRACTIONS = [
    ("all saints church", "architecture", "centre"),
    ("great saint mary's church", "architecture", "centre"),
    ("holy trinity church", "architecture", "centre"),
    ("little saint mary's church", "architecture", "centre"),
    ("old schools", "architecture", "centre"),
    ("abbey pool and astroturf pitch", "swimmingpool", "east"),
    ("parkside pools", "swimmingpool", "centre"),
    ("jesus green outdoor pool", "swimmingpool", "north"),
    ("kings hedges learner pool", "swimmingpool", "north"),
    ("cambridge artworks", "museum", "east"),
    ("fitzwilliam museum", "museum", "centre"),
    ("broughton house gallery", "museum", "centre"),
    ("kettle's yard", "museum", "west"),
    ("museum of classical archaeology", "museum", "west"),
    ("cambridge and county folk museum", "museum", "west"),
    ("whipple museum of the history of science", "museum", "centre"),
    ("castle galleries", "museum", "centre"),
    ("byard art", "museum", "south"),
    ("primavera", "museum", "centre"),
    ("christ's college", "college", "centre"),
    ("churchill college", "college", "west"),
    ("clare college", "college", "west"),
    ("downing college", "college", "centre"),
    ("king's college", "college", "centre"),
    ("queens' college", "college", "west"),
    ("trinity college", "college", "centre"),
    ("magdalene college", "college", "west"),
    ("corpus christi", "college", "centre"),
    ("ballare", "nightclub", "centre"),
    ("club salsa", "nightclub", "centre"),
    ("soul tree nightclub", "nightclub", "centre"),
    ("the junction", "theatre", "south"),
    ("adc theatre", "theatre", "centre"),
    ("mumford theatre", "theatre", "centre"),
    ("cambridge arts theatre", "theatre", "centre"),
    ("cambridge university botanic gardens", "park", "centre"),
    ("wandlebury country park", "park", "south"),
    ("milton country park", "park", "north"),
    ("cherry hinton water play", "park", "east"),
    ("the cherry hinton village centre", "multiple sports", "east"),
    ("cineworld cinema", "cinema", "south"),
    ("vue cinema", "cinema", "centre"),
    ("nusha", "entertainment", "south"),
    ("funky fun house", "entertainment", "east"),
    ("tenpin", "entertainment", "south"),
    ("scudamores punting co", "boat", "centre"),
    ("the cambridge punter", "boat", "centre"),
    ("riverboat georgina", "boat", "north"),
    ("camboats", "boat", "east"),
]

# station, minutes from cambridge, weekday price, departure minute (out, back)
ROUTES = [
    ("london kings cross", 51, 23.60, 0, 17),
    ("london liverpool street", 88, 16.60, 59, 39),
    ("birmingham new street", 163, 75.10, 1, 40),
    ("ely", 17, 4.40, 50, 35),
    ("stansted airport", 28, 10.10, 40, 24),
    ("peterborough", 50, 16.50, 6, 48),
    ("norwich", 79, 17.60, 36, 16),
    ("leicester", 105, 37.80, 21, 9),
    ("bishops stortford", 38, 10.10, 29, 5),
    ("broxbourne", 60, 17.90, 1, 32),
    ("stevenage", 49, 12.80, 21, 54),
]

DAYS = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]
DEPARTMENTS = ["acute medical assessment unit", "cardiology", "childrens surgical and medicine",
               "emergency department", "haematology", "infectious diseases", "neurology",
               "oncology", "paediatric clinic", "plastic and vascular surgery", "urology"]
FOODS = sorted({r[1] for r in RESTAURANTS})
ATTRACTION_TYPES = sorted({a[1] for a in ATTRACTIONS})
STATIONS = ["cambridge"] + [r[0] for r in ROUTES]


def phone(rng):
    return "01223%06d" % rng.randrange(10**6)


def postcode(rng):
    return "cb%d%d%s" % (rng.randrange(1, 6), rng.randrange(10), "".join(rng.choice("abdefghjlnpqrstuwxyz") for _ in range(2)))


def hhmm(m):
    return "%02d:%02d" % ((m // 60) % 24, m % 60)


def build_dbs():
    rng = random.Random(20221026)
    hotels = [dict(name=n, type=t, area=a, pricerange=p, stars=s, internet=i, parking=k,
                   address="%d %s road" % (rng.randrange(1, 200), n.split()[0]), phone=phone(rng))
              for n, t, a, p, s, i, k in HOTELS]
    restaurants = [dict(name=n, food=f, area=a, pricerange=p,
                        address="%d %s street" % (rng.randrange(1, 200), n.split()[-1]), phone=phone(rng),
                        postcode=postcode(rng)) for n, f, a, p in RESTAURANTS]
    attractions = [dict(name=n, type=t, area=a, address="%s lane" % n.split()[0], phone=phone(rng),
                        postcode=postcode(rng)) for n, t, a in ATTRACTIONS]
    trains = []
    for station, minutes, price, out_min, back_min in ROUTES:
        for day_idx, day in enumerate(DAYS):
            weekend = day in ("saturday", "sunday")
            fare = round(price * (0.8 if weekend else 1.0), 2)
            for hour in range(5, 24):
                for dep, dest, minute in (("cambridge", station, out_min), (station, "cambridge", back_min)):
                    leave = hour * 60 + minute
                    trains.append(dict(id="tr%04d" % rng.randrange(10000), departure=dep, destination=dest,
                                       day=day, leave=hhmm(leave), arrive=hhmm(leave + minutes),
                                       price="%.2f pounds" % fare, time="%d minutes" % minutes))
    return dict(hotel=hotels, restaurant=restaurants, attraction=attractions, train=trains)


def build_ontology():
    days = DAYS
    people = [str(i) for i in range(1, 9)]
    universal = ["inform", "request", "welcome", "greet", "bye", "reqmore"]
    return {
        "restaurant": {
            "informable": {"food": FOODS, "pricerange": ["cheap", "moderate", "expensive"],
                           "area": ["centre", "north", "south", "east", "west"],
                           "name": [r[0] for r in RESTAURANTS], "time": [], "day": days, "people": people},
            "extra": ["address", "postcode", "phone", "reference"],
            "requestable": ["address", "postcode", "phone", "reference", "food", "pricerange", "area", "name"],
            "acts": universal + ["select", "recommend", "nooffer", "offerbook", "offerbooked", "nobook"],
            "queryable": True},
        "hotel": {
            "informable": {"name": [h[0] for h in HOTELS], "area": ["centre", "north", "south", "east", "west"],
                           "pricerange": ["cheap", "moderate", "expensive"], "type": ["hotel", "guesthouse"],
                           "internet": ["yes", "no"], "parking": ["yes", "no"],
                           "stars": ["0", "1", "2", "3", "4", "5"], "stay": people, "day": days, "people": people},
            "extra": ["address", "phone", "reference"],
            "requestable": ["address", "phone", "reference", "area", "pricerange", "type", "internet", "parking",
                            "stars", "name"],
            "acts": universal + ["select", "recommend", "nooffer", "offerbook", "offerbooked", "nobook"],
            "queryable": True},
        "attraction": {
            "informable": {"name": [a[0] for a in ATTRACTIONS], "area": ["centre", "north", "south", "east", "west"],
                           "type": ATTRACTION_TYPES},
            "extra": ["address", "postcode", "phone"],
            "requestable": ["address", "postcode", "phone", "area", "type", "name"],
            "acts": universal + ["select", "recommend", "nooffer"],
            "queryable": True},
        "taxi": {
            "informable": {"departure": [], "destination": [], "leave": [], "arrive": []},
            "extra": ["phone", "car"],
            "requestable": ["phone", "car"],
            "acts": universal,
            "queryable": False},
        "train": {
            "informable": {"departure": STATIONS, "destination": STATIONS, "leave": [], "arrive": [], "day": days,
                           "people": people},
            "extra": ["reference", "id", "price", "time"],
            "requestable": ["reference", "id", "price", "time", "leave", "arrive"],
            "acts": universal + ["select", "nooffer", "offerbook", "offerbooked"],
            "queryable": True},
        "hospital": {
            "informable": {"department": DEPARTMENTS},
            "extra": ["address", "postcode", "phone"],
            "requestable": ["address", "postcode", "phone"],
            "acts": universal,
            "queryable": False},
        "police": {
            "informable": {},
            "extra": ["address", "postcode", "phone"],
            "requestable": ["address", "postcode", "phone"],
            "acts": universal,
            "queryable": False},
        "general": {
            "informable": {},
            "acts": ["welcome", "greet", "bye", "reqmore"],
            "queryable": False},
    }


def main():
    os.makedirs(os.path.join(ROOT, "db"), exist_ok=True)
    with open(os.path.join(ROOT, "ontology.json"), "w") as f:
        json.dump(build_ontology(), f, indent=1)
        f.write("\n")
    for domain, rows in build_dbs().items():
        with open(os.path.join(ROOT, "db", "%s_db.json" % domain), "w") as f:
            json.dump(rows, f, indent=None if domain == "train" else 1, separators=(",", ":") if domain == "train" else None)
            f.write("\n")


if __name__ == "__main__":
    main()
